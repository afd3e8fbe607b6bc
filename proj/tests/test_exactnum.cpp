#include <doctest.h>

#include <json.hpp>
#include <numbers>
#include <random>

#include "cuspmin/errors.hpp"
#include "cuspmin/exactnum.hpp"

using namespace cuspmin;

namespace {

constexpr unsigned kSeed = 20240611;

// Sylvester determinant by fraction-free elimination.
mpz_class sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    int m = f.degree(), n = g.degree(), N = m + n;
    if (N == 0) return 1;
    std::vector<std::vector<mpz_class>> a(N, std::vector<mpz_class>(N));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = f.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = g.c[n - j];
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < N && a[r][k] == 0) ++r;
            if (r == N) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[N - 1][N - 1];
}

// prod g(zeta) over primitive m-th roots, numerically
long double root_product(int m, const IntPoly& g) {
    std::complex<long double> p = 1;
    for (int j = 1; j <= m; ++j) {
        if (std::gcd(j, m) != 1) continue;
        long double a = 2 * std::numbers::pi_v<long double> * j / m;
        std::complex<long double> z(std::cos(a), std::sin(a)), s = 0, zp = 1;
        for (const auto& c : g.c) {
            s += (long double)c.get_d() * zp;
            zp *= z;
        }
        p *= s;
    }
    return p.real();
}

CycloElement random_element(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    CycloElement x(n, 0);
    for (int i = 0; i < euler_phi(n); ++i)
        x = x + CycloElement(n, mpq_class(num(rng), den(rng))) * CycloElement::zeta(n, i);
    return x;
}

std::vector<long> to_longs(const std::vector<mpq_class>& v) {
    std::vector<long> out;
    for (const auto& x : v) {
        REQUIRE(x.get_den() == 1);
        out.push_back(x.get_num().get_si());
    }
    return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == IntPoly::from_ints({-1, 1}));
    CHECK(cyclotomic_poly(3) == IntPoly::from_ints({1, 1, 1}));
    CHECK(cyclotomic_poly(6) == IntPoly::from_ints({1, -1, 1}));
    CHECK(cyclotomic_poly(12) == IntPoly::from_ints({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_poly(12).str() == "x^4 - x^2 + 1");
    CHECK(cyclotomic_poly(3).substitute_power(2) == cyclotomic_poly(3) * cyclotomic_poly(6));
    for (int n = 1; n <= 60; ++n) {
        CHECK(cyclotomic_poly(n).degree() == euler_phi(n));
        IntPoly prod = IntPoly::from_ints({1});
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic_poly(d);
        std::vector<mpz_class> xn(n + 1);
        xn[0] = -1;
        xn[n] = 1;
        CHECK(prod == IntPoly(xn));
    }
    CHECK_THROWS_AS(cyclotomic_poly(0), DomainError);
}

TEST_CASE("resultant examples") {
    CHECK(resultant(cyclotomic_poly(12), cyclotomic_poly(3)) == 4);
    CHECK(resultant(cyclotomic_poly(36), cyclotomic_poly(3)) == 1);
    CHECK(resultant(cyclotomic_poly(12), IntPoly::from_ints({1})) == 1);
    CHECK(resultant(IntPoly::from_ints({-2, 0, 1}), IntPoly::from_ints({-3, 0, 1})) == 1);
    CHECK(resultant(IntPoly::from_ints({-1, 1}), IntPoly::from_ints({-1, 1})) == 0);
    CHECK_THROWS_AS(resultant(IntPoly(), cyclotomic_poly(3)), DomainError);
}

TEST_CASE("resultant against the Sylvester determinant") {
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<int> deg(0, 7), coef(-6, 6);
    for (int rep = 0; rep < 200; ++rep) {
        auto poly = [&] {
            std::vector<mpz_class> v(deg(rng) + 1);
            for (auto& c : v) c = coef(rng);
            if (v.back() == 0) v.back() = 1;
            return IntPoly(v);
        };
        IntPoly f = poly(), g = poly();
        CAPTURE(f.str());
        CAPTURE(g.str());
        CHECK(resultant(f, g) == sylvester_resultant(f, g));
    }
}

TEST_CASE("cyclotomic resultants against root products") {
    for (int m : {12, 18, 24, 30, 36, 48})
        for (int n : {1, 2, 3, 4, 6}) {
            if (m == n) continue;
            auto r = resultant(cyclotomic_poly(m), cyclotomic_poly(n));
            CHECK(std::fabs(root_product(m, cyclotomic_poly(n)) - (long double)r.get_d()) < 1e-6L);
        }
}

TEST_CASE("resultants of cyclotomic pairs vanish off prime powers") {
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<int> base(1, 30), mult(2, 12);
    for (int rep = 0; rep < 100; ++rep) {
        int n = base(rng), m = n * mult(rng);
        CAPTURE(m);
        CAPTURE(n);
        auto r = resultant(cyclotomic_poly(m), cyclotomic_poly(n));
        CHECK((abs(r) == 1) == !is_prime_power(m / n));
    }
}

TEST_CASE("norm of alpha^2 - 1 through resultants") {
    for (int k = 2; k <= 32; k += 2) {
        CAPTURE(k);
        auto n = norm_alpha_check(k);
        CHECK(n.direct == n.factored);
        CHECK(n.cyclotomic == (is_power_of_two(k) ? 16 : 1));
        mpz_class r4 = mpz_class(n.relative) * n.relative * n.relative * n.relative;
        CHECK(r4 == n.cyclotomic);
        CHECK(n.numeric_sign == (n.relative > 0 ? 1 : -1));
    }
    CHECK(norm_alpha_check(2).relative == 2);
    CHECK(norm_alpha_check(4).relative == -2);
    CHECK(norm_alpha_check(6).relative == -1);
    CHECK(norm_alpha_check(6).cyclotomic == 1);
    CHECK_THROWS_AS(norm_alpha_check(3), ParityError);
}

TEST_CASE("cyclotomic field arithmetic") {
    std::mt19937 rng(kSeed);
    for (int n : {3, 8, 12, 18, 24}) {
        CycloElement one(n, 1), zero(n, 0);
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_element(n, rng), b = random_element(n, rng), c = random_element(n, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + zero == a);
            CHECK(a * one == a);
            CHECK(a - a == zero);
            if (!a.is_zero()) CHECK(a * a.inverse() == one);
            CHECK(a.conj().conj() == a);
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK(std::abs((a * b).embed() - a.embed() * b.embed()) < 1e-10L);
            CHECK(std::abs((a + b).embed() - (a.embed() + b.embed())) < 1e-10L);
            CHECK(std::abs(a.conj().embed() - std::conj(a.embed())) < 1e-10L);
        }
        CHECK(CycloElement::zeta(n).pow(n) == one);
        CHECK_FALSE(CycloElement::zeta(n) == one);
    }
    CHECK_THROWS_AS(CycloElement(12, 0).inverse(), DomainError);
    CHECK_THROWS_AS(CycloElement(12, 1) + CycloElement(6, 1), DomainError);
}

TEST_CASE("minimal polynomials and integrality") {
    // 2 cos(pi/9)
    auto eta = CycloElement::zeta(18);
    auto y = eta + eta.inverse();
    CHECK(y.is_real());
    CHECK(to_longs(minimal_polynomial(y)) == std::vector<long>{-1, -3, 0, 1});
    CHECK(is_algebraic_integer(y));
    // sqrt(-3) = 2 zeta_3 + 1
    auto s = CycloElement(3, 2) * CycloElement::zeta(3) + CycloElement(3, 1);
    CHECK(to_longs(minimal_polynomial(s)) == std::vector<long>{3, 0, 1});
    CHECK_FALSE(is_algebraic_integer(CycloElement(18, mpq_class(1, 2)) * y.pow(2)));
    CHECK_FALSE(is_algebraic_integer(y * CycloElement(18, mpq_class(1, 3))));
    CHECK(minimal_polynomial(CycloElement(12, 5)).size() == 2);
}

TEST_CASE("Gram matrix at two cusps") {
    auto g = gram_exact(2);
    CHECK(g.z_sq == CycloElement(12, 3));
    CHECK(g.l1_sq == CycloElement(12, mpq_class(27, 2)));
    CHECK(g.l2 == CycloElement(12, mpq_class(-5, 2)));
    CHECK(g.det_Gprime == CycloElement(12, -972));
    CHECK(g.disc_radicand == -3);
    CHECK(g.products.size() == 11);
    CHECK(g.all_orders_count == 16);
    // alpha = 2 cos(pi/6)
    CHECK(std::abs(g.alpha.embed() - std::sqrt(3.0L)) < 1e-15L);
}

TEST_CASE("restricted Gram form") {
    for (int k : {2, 4, 6}) {
        auto g = gram_exact(k);
        int n = 6 * k;
        auto c = [&](long v) { return CycloElement(n, v); };
        const auto& z2 = g.z_sq;
        std::array<std::array<CycloElement, 4>, 4> printed{{
            {c(8), c(2), c(2), c(2) * z2},
            {c(2), c(2), c(-1), -z2},
            {c(2), c(-1), c(2), -z2},
            {c(2) * z2, -z2, -z2, c(2) * z2},
        }};
        CHECK(g.Gprime == printed);
    }
}

TEST_CASE("determinant of the restricted form") {
    for (int k = 2; k <= 20; k += 2) {
        CAPTURE(k);
        auto g = gram_exact(k);
        CHECK(g.det_Gprime + CycloElement(6 * k, 108) * g.z_sq * g.z_sq == CycloElement(6 * k, 0));
        CHECK(g.det_Gprime.is_real());
        CHECK(g.products.size() == g.expected.size());
    }
}

TEST_CASE("Gram entries") {
    auto G = gram_matrix_exact(4);
    for (int i = 0; i < 7; ++i) {
        CHECK(G[i][i].c == CycloElement(24, 2));
        for (int j = 0; j < 7; ++j) CHECK(std::abs(G[i][j].embed() - G[j][i].embed()) < 1e-15L);
    }
    // the length entry squares into the field
    auto sq = G[0][6] * G[0][6];
    CHECK(sq.in_field());
    CHECK(std::abs(G[0][6].embed().real() + 2 * 3 * std::cos(std::numbers::pi_v<long double> / 12) /
                                                   std::sqrt(1 + 2 * std::cos(std::numbers::pi_v<long double> / 6))) <
          1e-12L);
    CHECK(G[0][6].embed().real() < 0);
}

TEST_CASE("cyclic products are integral away from powers of two") {
    auto g = gram_exact(6);
    for (const auto& p : g.products) CHECK(is_algebraic_integer(p));
    auto g8 = gram_exact(8);
    bool all = true;
    for (const auto& p : g8.products) all = all && is_algebraic_integer(p);
    CHECK_FALSE(all);
}

TEST_CASE("arithmetic verdicts") {
    auto v2 = arithmetic_verdict(2);
    CHECK(v2.trace_field_degree == 2);
    CHECK(v2.adjoint_field_degree == 1);
    CHECK_FALSE(v2.integral_traces);
    CHECK(v2.quasi_arithmetic);
    CHECK_FALSE(v2.arithmetic);
    auto v6 = arithmetic_verdict(6);
    CHECK(v6.trace_field_degree == 6);
    CHECK(v6.integral_traces);
    CHECK_FALSE(v6.quasi_arithmetic);
    CHECK_FALSE(arithmetic_verdict(8).integral_traces);
    for (int k = 2; k <= 24; k += 2) {
        auto v = arithmetic_verdict(k);
        CHECK(v.trace_field_degree == euler_phi(3 * k));
        CHECK(v.integral_traces == !is_power_of_two(k));
        CHECK(v.quasi_arithmetic == (k == 2));
        CHECK_FALSE(v.arithmetic);
        CHECK(v.discriminant_class_radicand == -3);
    }
    auto j = nlohmann::json::parse(verdict_to_json(v2));
    CHECK(j["k"] == 2);
    CHECK(j["degree"] == 2);
    CHECK(j["disc_radicand"] == -3);
    CHECK(j["integral"] == false);
    CHECK(j["quasi_arithmetic"] == true);
    CHECK(j["norms"]["cyclotomic"] == 16);
    CHECK(j["norms"]["relative"] == 2);
    CHECK_THROWS_AS(arithmetic_verdict(5), ParityError);
}
