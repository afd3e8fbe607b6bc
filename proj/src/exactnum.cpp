#include "cuspmin/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cuspmin/errors.hpp"

namespace cuspmin {

namespace {

template <class T>
void trim(std::vector<T>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace

// ---- integer polynomials -------------------------------------------------

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(c); }

IntPoly IntPoly::from_ints(std::initializer_list<long> coeffs) {
    std::vector<mpz_class> v;
    for (long x : coeffs) v.emplace_back(x);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::substitute_power(int m) const {
    if (is_zero()) return {};
    std::vector<mpz_class> v(size_t(degree()) * m + 1);
    for (size_t i = 0; i < c.size(); ++i) v[i * m] = c[i];
    return IntPoly(std::move(v));
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c[i];
        if (a == 0) continue;
        mpz_class m = abs(a);
        os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (m != 1 || i == 0) os << m.get_str();
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> v(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(v));
}

namespace {

// Exact quotient by a monic divisor; throws if the remainder is nonzero.
IntPoly exact_div_monic(const IntPoly& a, const IntPoly& m) {
    std::vector<mpz_class> r = a.c;
    int dm = m.degree();
    std::vector<mpz_class> q(std::max(0, a.degree() - dm + 1));
    for (int i = a.degree(); i >= dm; --i) {
        mpz_class t = r[i];
        if (t == 0) continue;
        q[i - dm] = t;
        for (int j = 0; j <= dm; ++j) r[i - dm + j] -= t * m.c[j];
    }
    trim(r);
    if (!r.empty()) throw InternalCheckError("InexactDivision", "cyclotomic division left a remainder");
    return IntPoly(std::move(q));
}

mpz_class content(const IntPoly& p) {
    mpz_class g = 0;
    for (const auto& a : p.c) g = gcd(g, a);
    return g;
}

IntPoly div_scalar(const IntPoly& p, const mpz_class& d) {
    std::vector<mpz_class> v = p.c;
    for (auto& a : v) {
        if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()))
            throw InternalCheckError("InexactDivision", "subresultant step is not exact");
        a /= d;
    }
    return IntPoly(std::move(v));
}

IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    int db = b.degree();
    int e = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
        mpz_class t = a.lead();
        int shift = a.degree() - db;
        std::vector<mpz_class> v = a.c;
        for (auto& x : v) x *= b.lead();
        for (int j = 0; j <= db; ++j) v[shift + j] -= t * b.c[j];
        a = IntPoly(std::move(v));
        --e;
    }
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), b.lead().get_mpz_t(), std::max(0, e));
    for (auto& x : a.c) x *= s;
    return a;
}

mpz_class zpow(const mpz_class& b, int e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

IntPoly cyclotomic_poly(int n) {
    if (n < 1) throw DomainError("cyclotomic_poly needs n >= 1");
    static std::map<int, IntPoly> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<mpz_class> v(n + 1);
    v[0] = -1;
    v[n] = 1;
    IntPoly p(std::move(v));
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = exact_div_monic(p, cyclotomic_poly(d));
    std::lock_guard lock(mu);
    cache.emplace(n, p);
    return p;
}

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

bool is_prime_power(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1;
        }
    return true;
}

bool is_power_of_two(long n) { return n >= 1 && (n & (n - 1)) == 0; }

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("resultant of the zero polynomial");
    IntPoly a = f, b = g;
    mpz_class s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 && b.degree() % 2) s = -1;
    }
    if (b.degree() == 0) return s * zpow(b.lead(), a.degree());
    mpz_class ca = content(a), cb = content(b);
    if (a.lead() < 0) ca = -ca;
    if (b.lead() < 0) cb = -cb;
    a = div_scalar(a, ca);
    b = div_scalar(b, cb);
    mpz_class t = zpow(ca, b.degree()) * zpow(cb, a.degree());
    mpz_class gg = 1, h = 1;
    while (true) {
        int delta = a.degree() - b.degree();
        if (a.degree() % 2 && b.degree() % 2) s = -s;
        IntPoly r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero()) return 0;
        b = div_scalar(r, gg * zpow(h, delta));
        gg = a.lead();
        if (delta > 0) h = zpow(gg, delta) / zpow(h, delta - 1);
        if (b.degree() == 0) break;
    }
    // h <- lc(B)^deg A / h^(deg A - 1)
    int da = a.degree();
    mpz_class num = zpow(b.lead(), da);
    mpz_class hh = num / zpow(h, da - 1);
    return s * t * hh;
}

// ---- cyclotomic fields ---------------------------------------------------

namespace {

using QPoly = std::vector<mpq_class>;

QPoly qpoly(const IntPoly& p) {
    QPoly v;
    for (const auto& a : p.c) v.emplace_back(a);
    return v;
}

// Quotient and remainder over Q.
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    int db = int(b.size()) - 1;
    QPoly q(std::max<int>(0, int(a.size()) - db));
    for (int i = int(a.size()) - 1; i >= db; --i) {
        if (a[i] == 0) continue;
        mpq_class t = a[i] / b[db];
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= t * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly v(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
    trim(v);
    return v;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

CycloElement::CycloElement(int n, const mpq_class& r) : n_(n) {
    if (n < 1) throw DomainError("conductor must be positive");
    if (r != 0) c_.push_back(r);
    for (auto& x : c_) x.canonicalize();
}

CycloElement::CycloElement(int n, std::vector<mpq_class> c) : n_(n), c_(std::move(c)) { reduce(); }

CycloElement CycloElement::zeta(int n, int power) {
    int e = ((power % n) + n) % n;
    std::vector<mpq_class> c(e + 1);
    c[e] = 1;
    return CycloElement(n, std::move(c));
}

void CycloElement::reduce() {
    IntPoly m = cyclotomic_poly(n_);
    int d = m.degree();
    for (int i = int(c_.size()) - 1; i >= d; --i) {
        if (c_[i] == 0) continue;
        mpq_class t = c_[i];
        for (int j = 0; j <= d; ++j) c_[i - d + j] -= t * m.c[j];
    }
    if (int(c_.size()) > d) c_.resize(d);
    trim(c_);
}

bool CycloElement::is_zero() const { return c_.empty(); }
bool CycloElement::is_rational() const { return c_.size() <= 1; }

namespace {

void same_field(const CycloElement& a, const CycloElement& b) {
    if (a.conductor() != b.conductor()) throw DomainError("elements of different cyclotomic fields");
}

}  // namespace

CycloElement CycloElement::operator+(const CycloElement& o) const {
    same_field(*this, o);
    std::vector<mpq_class> v = c_;
    if (v.size() < o.c_.size()) v.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    trim(v);
    return CycloElement(n_, std::move(v));
}

CycloElement CycloElement::operator-() const {
    std::vector<mpq_class> v = c_;
    for (auto& x : v) x = -x;
    return CycloElement(n_, std::move(v));
}

CycloElement CycloElement::operator-(const CycloElement& o) const { return *this + (-o); }

CycloElement CycloElement::operator*(const CycloElement& o) const {
    same_field(*this, o);
    return CycloElement(n_, qmul(c_, o.c_));
}

CycloElement CycloElement::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    // extended Euclid: s * a + t * m = gcd, with gcd a nonzero constant
    QPoly m = qpoly(cyclotomic_poly(n_));
    QPoly r0 = m, r1 = c_, s0, s1{1};
    while (r1.size() > 1) {
        auto [q, r] = qdivmod(r0, r1);
        QPoly s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.empty()) throw InternalCheckError("NotInvertible", "cyclotomic polynomial is not irreducible?");
    for (auto& x : s1) x /= r1[0];
    return CycloElement(n_, std::move(s1));
}

CycloElement CycloElement::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    CycloElement r(n_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

CycloElement CycloElement::conj() const {
    std::vector<mpq_class> v(n_);
    for (size_t i = 0; i < c_.size(); ++i) v[(n_ - int(i)) % n_] += c_[i];
    trim(v);
    return CycloElement(n_, std::move(v));
}

std::complex<long double> CycloElement::embed() const {
    std::complex<long double> s = 0;
    const long double tau = 2 * std::numbers::pi_v<long double>;
    for (size_t i = 0; i < c_.size(); ++i) {
        long double a = tau * (long double)(i) / n_;
        s += (long double)c_[i].get_d() * std::complex<long double>(std::cos(a), std::sin(a));
    }
    return s;
}

bool CycloElement::operator<(const CycloElement& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string CycloElement::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i > 0) os << "*z^" << i;
        first = false;
    }
    return os.str();
}

std::vector<mpq_class> minimal_polynomial(const CycloElement& x) {
    // Krylov: reduce 1, x, x^2, ... against an echelon basis until the first
    // linear relation appears.
    int n = x.conductor();
    int dim = euler_phi(n);
    struct Row {
        std::vector<mpq_class> v;
        int pivot;
        std::vector<mpq_class> comb;  // in terms of powers of x
    };
    std::vector<Row> rows;
    CycloElement p(n, 1);
    for (int d = 0; d <= dim; ++d) {
        std::vector<mpq_class> v = p.coeffs();
        v.resize(dim);
        std::vector<mpq_class> comb(d + 1);
        comb[d] = 1;
        for (const auto& r : rows) {
            if (v[r.pivot] == 0) continue;
            mpq_class t = v[r.pivot] / r.v[r.pivot];
            for (int i = 0; i < dim; ++i) v[i] -= t * r.v[i];
            for (size_t i = 0; i < r.comb.size(); ++i) comb[i] -= t * r.comb[i];
        }
        int piv = -1;
        for (int i = 0; i < dim && piv < 0; ++i)
            if (v[i] != 0) piv = i;
        if (piv < 0) {
            mpq_class lead = comb[d];
            for (auto& c : comb) c /= lead;
            return comb;
        }
        rows.push_back({std::move(v), piv, std::move(comb)});
        p = p * x;
    }
    throw InternalCheckError("NoRelation", "powers stayed independent beyond the field degree");
}

bool is_algebraic_integer(const CycloElement& x) {
    for (const auto& c : minimal_polynomial(x))
        if (c.get_den() != 1) return false;
    return true;
}

// ---- Gram entries --------------------------------------------------------

GramEntry GramEntry::of(const CycloElement& c) { return {c, CycloElement(c.conductor(), 1)}; }

std::complex<long double> GramEntry::embed() const { return c.embed() * std::sqrt(u.embed()); }

GramEntry operator*(const GramEntry& a, const GramEntry& b) {
    if (a.in_field()) return {a.c * b.c, b.u};
    if (b.in_field()) return {a.c * b.c, a.u};
    if (a.u == b.u) return GramEntry::of(a.c * b.c * a.u);
    throw InternalCheckError("RadicandMismatch", "product of two different square roots");
}

namespace {

void check_k(int k) {
    if (k < 2 || k % 2) throw ParityError("k must be even and at least 2, got " + std::to_string(k));
}

struct Quantities {
    int n;
    CycloElement alpha, a2, z, l1_sq, l2;
};

Quantities quantities(int k) {
    int n = 6 * k;
    CycloElement eta = CycloElement::zeta(n);
    CycloElement alpha = eta + eta.inverse();
    CycloElement a2 = alpha * alpha;
    CycloElement one(n, 1);
    CycloElement den = (a2 - one).inverse();
    Quantities q{n, alpha, a2, -alpha, CycloElement(n, 9) * a2 * den, -(a2 + CycloElement(n, 2)) * den};
    for (const auto* x : {&q.alpha, &q.a2, &q.l1_sq, &q.l2})
        if (!x->is_real()) throw InternalCheckError("NotReal", "expected a real field element");
    return q;
}

GramMatrix build_gram(const Quantities& q) {
    int n = q.n;
    auto r = [&](long v) { return GramEntry::of(CycloElement(n, v)); };
    GramEntry z = GramEntry::of(q.z), L1{CycloElement(n, -1), q.l1_sq}, L2 = GramEntry::of(q.l2), O = r(0);
    GramEntry two = r(2), m1 = r(-1);
    return GramMatrix{{
        {two, m1, m1, z, O, O, L1},
        {m1, two, m1, z, L1, O, O},
        {m1, m1, two, z, O, L1, O},
        {z, z, z, two, O, O, O},
        {O, L1, O, O, two, L2, L2},
        {O, O, L1, O, L2, two, L2},
        {L1, O, O, O, L2, L2, two},
    }};
}

CycloElement det4(const std::array<std::array<CycloElement, 4>, 4>& m) {
    std::array<int, 4> p{0, 1, 2, 3};
    CycloElement s(m[0][0].conductor(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
        CycloElement t = m[0][p[0]] * m[1][p[1]] * m[2][p[2]] * m[3][p[3]];
        s = inv % 2 ? s - t : s + t;
    } while (std::next_permutation(p.begin(), p.end()));
    return s;
}

}  // namespace

GramMatrix gram_matrix_exact(int k) {
    check_k(k);
    return build_gram(quantities(k));
}

std::vector<CycloElement> cyclic_products(const GramMatrix& G, bool all_orders) {
    std::set<CycloElement> out;
    for (int mask = 1; mask < 128; ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < 7; ++i)
            if (mask >> i & 1) idx.push_back(i);
        do {
            GramEntry b = G[idx.back()][idx.front()];
            for (size_t t = 0; t + 1 < idx.size() && !b.is_zero(); ++t) b = b * G[idx[t]][idx[t + 1]];
            if (b.is_zero()) continue;
            if (!b.in_field()) throw InternalCheckError("OddRadical", "cyclic product outside the field");
            out.insert(b.c);
        } while (all_orders && std::next_permutation(idx.begin() + 1, idx.end()));
    }
    return {out.begin(), out.end()};
}

GramExact gram_exact(int k) {
    check_k(k);
    auto q = quantities(k);
    GramExact r;
    r.k = k;
    r.conductor = q.n;
    r.alpha = q.alpha;
    r.z_sq = q.a2;
    r.l1_sq = q.l1_sq;
    r.l2 = q.l2;
    r.G = build_gram(q);
    r.products = cyclic_products(r.G);
    r.all_orders_count = int(cyclic_products(r.G, true).size());

    int n = q.n;
    auto c = [&](long v) { return CycloElement(n, v); };
    const auto &z2 = q.a2, &L1 = q.l1_sq, &L2 = q.l2;
    r.expected = {
        {"2", c(2)},           {"1", c(1)},         {"z^2", z2},         {"l1^2", L1},
        {"l2^2", L2 * L2},     {"-1", c(-1)},       {"-z^2", -z2},       {"l2^3", L2 * L2 * L2},
        {"-l1^2 l2", -L1 * L2}, {"l1^2 l2", L1 * L2}, {"-l1^2 l2^2", -L1 * L2 * L2},
    };
    std::set<CycloElement> want;
    for (const auto& e : r.expected) want.insert(e.value);
    if (want != std::set<CycloElement>(r.products.begin(), r.products.end()))
        throw CyclicProductMismatch("cyclic products of G_" + std::to_string(k) + " differ from the expected list (" +
                                    std::to_string(r.products.size()) + " found)");

    // restriction to v1 = 2e1, v2 = -e2, v3 = -e3, v4 = z e4
    std::array<CycloElement, 4> s{c(2), c(-1), c(-1), q.z};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (!r.G[i][j].in_field()) throw InternalCheckError("OddRadical", "G' entry outside the field");
            r.Gprime[i][j] = s[i] * s[j] * r.G[i][j].c;
        }
    r.det_Gprime = det4(r.Gprime);
    if (r.det_Gprime != c(-108) * z2 * z2)
        throw ConsistencyError("det G'_" + std::to_string(k) + " is not -108 z^4");
    CycloElement six_z2 = c(6) * z2;
    if (r.det_Gprime != c(-3) * six_z2 * six_z2) throw ConsistencyError("discriminant square class");
    r.disc_radicand = -3;
    return r;
}

NormCheck norm_alpha_check(int k) {
    check_k(k);
    NormCheck r;
    r.k = k;
    IntPoly phi = cyclotomic_poly(6 * k);
    r.direct = resultant(phi, cyclotomic_poly(3).substitute_power(2));
    r.factored = resultant(phi, cyclotomic_poly(3)) * resultant(phi, cyclotomic_poly(6));
    if (r.direct != r.factored)
        throw InconsistentFactorization("Res(Phi_6k, Phi_3(x^2)) = " + r.direct.get_str() + " but the factored route gives " +
                                        r.factored.get_str());
    r.cyclotomic = r.direct;

    // exact relative norm from the minimal polynomial of alpha^2 - 1
    auto q = quantities(k);
    auto m = minimal_polynomial(q.a2 - CycloElement(q.n, 1));
    int d = int(m.size()) - 1;
    mpq_class nrm = d % 2 ? -m[0] : m[0];
    if (nrm.get_den() != 1) throw InternalCheckError("NonIntegralNorm", "norm of an algebraic integer is not an integer");
    r.relative = nrm.get_num().get_si();
    int index = euler_phi(6 * k) / d;
    if (index != 4) throw InternalCheckError("FieldIndex", "alpha^2 - 1 does not generate the real subfield");
    if (zpow(mpz_class(r.relative), index) != r.cyclotomic)
        throw InconsistentFactorization("relative norm to the fourth does not give the cyclotomic norm");

    // one representative j in (0, 3k/2) per real embedding
    long double prod = 1;
    for (int j = 1; 2 * j < 3 * k; ++j) {
        if (std::gcd(j, 6 * k) != 1) continue;
        long double c = std::cos(std::numbers::pi_v<long double> * j / (3 * k));
        prod *= 4 * c * c - 1;
    }
    r.numeric_sign = prod > 0 ? 1 : -1;
    if (std::fabs(std::fabs(prod) - std::labs(r.relative)) > 1e-9L || r.numeric_sign != (r.relative > 0 ? 1 : -1))
        throw CrossCheckError("numeric norm disagrees with the exact one");
    return r;
}

ArithVerdict arithmetic_verdict(int k) {
    check_k(k);
    ArithVerdict v;
    v.k = k;
    auto g = gram_exact(k);
    v.norms = norm_alpha_check(k);
    v.adjoint_field_degree = int(minimal_polynomial(g.z_sq).size()) - 1;
    if (v.adjoint_field_degree != euler_phi(3 * k) / 2)
        throw InternalCheckError("FieldDegree", "unexpected degree of the real subfield");
    // the field is real, so adjoining sqrt(-3) doubles the degree
    v.trace_field_degree = 2 * v.adjoint_field_degree;
    v.discriminant_class_radicand = g.disc_radicand;
    bool integral = true;
    for (const auto& p : g.products) integral = integral && is_algebraic_integer(p);
    bool unit = std::labs(v.norms.relative) == 1;
    if (integral != unit) throw CrossCheckError("integrality of the cyclic products disagrees with the norm test");
    v.integral_traces = integral;
    v.quasi_arithmetic = v.trace_field_degree == 2;
    v.arithmetic = v.quasi_arithmetic && v.integral_traces;
    return v;
}

std::string verdict_to_json(const ArithVerdict& v) {
    nlohmann::ordered_json j;
    j["k"] = v.k;
    j["degree"] = v.trace_field_degree;
    j["adjoint_degree"] = v.adjoint_field_degree;
    j["disc_radicand"] = v.discriminant_class_radicand;
    j["integral"] = v.integral_traces;
    j["quasi_arithmetic"] = v.quasi_arithmetic;
    j["arithmetic"] = v.arithmetic;
    j["norms"] = {{"cyclotomic", v.norms.cyclotomic.get_si()},
                  {"relative", v.norms.relative},
                  {"res_direct", v.norms.direct.get_si()},
                  {"res_factored", v.norms.factored.get_si()}};
    return j.dump();
}

}  // namespace cuspmin
