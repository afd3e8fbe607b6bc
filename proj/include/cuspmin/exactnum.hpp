#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cuspmin {

// Dense integer polynomial, constant term first. The zero polynomial has no
// coefficients.
struct IntPoly {
    std::vector<mpz_class> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly from_ints(std::initializer_list<long> coeffs);

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lead() const { return c.back(); }
    // f(x^m)
    IntPoly substitute_power(int m) const;
    std::string str() const;
    bool operator==(const IntPoly&) const = default;
};

IntPoly operator*(const IntPoly& a, const IntPoly& b);

IntPoly cyclotomic_poly(int n);
int euler_phi(int n);
bool is_prime_power(long n);
bool is_power_of_two(long n);

// Resultant by the subresultant pseudo-remainder sequence.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

// An element of Q(zeta_n), stored reduced modulo the n-th cyclotomic polynomial.
class CycloElement {
public:
    CycloElement() = default;
    CycloElement(int n, const mpq_class& r);
    static CycloElement zeta(int n, int power = 1);

    int conductor() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;

    CycloElement operator+(const CycloElement& o) const;
    CycloElement operator-(const CycloElement& o) const;
    CycloElement operator-() const;
    CycloElement operator*(const CycloElement& o) const;
    CycloElement inverse() const;
    CycloElement operator/(const CycloElement& o) const { return *this * o.inverse(); }
    CycloElement pow(int e) const;
    // Complex conjugation, zeta -> zeta^-1.
    CycloElement conj() const;
    bool is_real() const { return conj() == *this; }

    std::complex<long double> embed() const;  // zeta -> exp(2 pi i / n)
    bool operator==(const CycloElement& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator<(const CycloElement& o) const;  // arbitrary total order for sets
    std::string str() const;

private:
    CycloElement(int n, std::vector<mpq_class> c);
    void reduce();
    int n_ = 1;
    std::vector<mpq_class> c_;
};

// Monic minimal polynomial over Q, constant term first.
std::vector<mpq_class> minimal_polynomial(const CycloElement& x);
bool is_algebraic_integer(const CycloElement& x);

// c * sqrt(u) with c, u real elements of the field; u = 1 when the entry lies
// in the field itself.
struct GramEntry {
    CycloElement c;
    CycloElement u;

    static GramEntry of(const CycloElement& c);
    bool is_zero() const { return c.is_zero(); }
    bool in_field() const { return u == CycloElement(u.conductor(), 1); }
    std::complex<long double> embed() const;
};

// Throws if the two radicands differ and neither is 1.
GramEntry operator*(const GramEntry& a, const GramEntry& b);

using GramMatrix = std::array<std::array<GramEntry, 7>, 7>;

struct NamedValue {
    std::string name;
    CycloElement value;
};

struct GramExact {
    int k = 0;
    int conductor = 0;       // 6k
    CycloElement alpha;      // 2 cos(pi / 3k)
    CycloElement z_sq, l1_sq, l2;
    GramMatrix G;
    std::vector<CycloElement> products;  // distinct nonzero cyclic products, increasing index order
    std::vector<NamedValue> expected;    // the published list, evaluated
    int all_orders_count = 0;            // distinct products when every cyclic order is allowed
    std::array<std::array<CycloElement, 4>, 4> Gprime;
    CycloElement det_Gprime;
    int disc_radicand = 0;
};

GramMatrix gram_matrix_exact(int k);
// Distinct nonzero cyclic products over index subsets. With all_orders every
// cyclic arrangement of each subset is used, not just the increasing one.
std::vector<CycloElement> cyclic_products(const GramMatrix& G, bool all_orders = false);
GramExact gram_exact(int k);

struct NormCheck {
    int k = 0;
    mpz_class direct;        // Res(Phi_6k, Phi_3(x^2))
    mpz_class factored;      // Res(Phi_6k, Phi_3) * Res(Phi_6k, Phi_6)
    mpz_class cyclotomic;    // norm from Q(zeta_6k)
    long relative = 0;       // norm from N_k, signed
    int numeric_sign = 0;    // sign of the product over real embeddings
};

NormCheck norm_alpha_check(int k);

struct ArithVerdict {
    int k = 0;
    int trace_field_degree = 0;
    int adjoint_field_degree = 0;
    int discriminant_class_radicand = 0;
    bool integral_traces = false;
    bool quasi_arithmetic = false;
    bool arithmetic = false;
    NormCheck norms;
};

ArithVerdict arithmetic_verdict(int k);
std::string verdict_to_json(const ArithVerdict& v);

}  // namespace cuspmin
