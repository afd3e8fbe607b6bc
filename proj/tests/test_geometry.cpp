#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cuspmin/errors.hpp"
#include "cuspmin/exactnum.hpp"
#include "cuspmin/geometry.hpp"

using namespace cuspmin;
using C = std::complex<double>;
constexpr double PI = std::numbers::pi;

namespace {

// direct partial sum of sin(n t) / n^2
double sine_partial_sum(double t, long N) {
    double s = 0;
    for (long n = N; n >= 1; --n) s += std::sin(n * t) / (double(n) * n);
    return s;
}

}  // namespace

TEST_CASE("hyperbolic trigonometry of the truncated tetrahedron") {
    auto g = geometry_params(2);
    CHECK(g.cosh_l2 == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(std::acosh(g.cosh_l2) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(g.cosh_l1 == doctest::Approx(3 * std::sqrt(3.0) / (2 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(g.cosh_l1 == doctest::Approx(1.8371173071).epsilon(1e-10));
    CHECK(g.z == doctest::Approx(-std::sqrt(3.0)));

    for (int k = 2; k <= 200; k += 2) {
        auto h = geometry_params(k);
        CHECK(std::fabs(h.cosh_l1 - std::sin(h.theta) * h.cosh_p) < 1e-12 * h.cosh_p);
        CHECK(h.cosh_d >= 1);
        CHECK(h.cosh_p >= 1);
        CHECK(h.cosh_l2 >= 1);
        CHECK(h.l2_tilde == -2 * h.cosh_l2);
    }
    CHECK_THROWS_AS(geometry_params(3), ParityError);
    CHECK_THROWS_AS(geometry_params(0), ParityError);
}

TEST_CASE("numeric Gram matrix is realized in a (3,1) space") {
    for (int k = 2; k <= 24; k += 2) {
        auto s = gram_numeric_signature(k);
        CHECK(s.positive == 3);
        CHECK(s.negative == 1);
        CHECK(s.zero == 3);
        CHECK(s.reconstruction_error < 1e-8);
        Eigen::Vector4d J(s.form[0], s.form[1], s.form[2], s.form[3]);
        for (int i = 0; i < 7; ++i) {
            Eigen::Vector4d e = s.normals.col(i);
            CHECK(e.dot(J.asDiagonal() * e) == doctest::Approx(2).epsilon(1e-8));
        }
    }
    auto l = gram_numeric_signature<long double>(12);
    CHECK(l.negative == 1);
}

TEST_CASE("float Gram agrees with the exact field embedding") {
    for (int k = 2; k <= 24; k += 2) {
        auto G = gram_numeric(k);
        auto E = gram_matrix_exact(k);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) CHECK(std::fabs(G(i, j) - double(E[i][j].embed().real())) < 1e-10);

        // every exact cyclic product is a float cyclic product and vice versa
        std::vector<double> flt;
        for (int mask = 1; mask < 128; ++mask) {
            std::vector<int> idx;
            for (int i = 0; i < 7; ++i)
                if (mask >> i & 1) idx.push_back(i);
            double p = G(idx.back(), idx.front());
            for (size_t t = 0; t + 1 < idx.size(); ++t) p *= G(idx[t], idx[t + 1]);
            if (p != 0) flt.push_back(p);
        }
        auto ex = cyclic_products(E);
        for (const auto& x : ex) {
            double v = double(x.embed().real());
            bool hit = false;
            for (double f : flt) hit |= std::fabs(f - v) < 1e-10 * std::max(1.0, std::fabs(v));
            CHECK(hit);
        }
        for (double f : flt) {
            bool hit = false;
            for (const auto& x : ex) hit |= std::fabs(f - double(x.embed().real())) < 1e-10 * std::max(1.0, std::fabs(f));
            CHECK(hit);
        }
    }
}

TEST_CASE("dilogarithm against frozen high-precision values") {
    struct Row {
        C z, want;
    };
    // 30-digit reference evaluations, rounded
    const Row rows[] = {
        {{0.5, 0}, {0.58224052646501250590, 0}},
        {{-1, 0}, {-0.82246703342411321824, 0}},
        {{0.3, 0.4}, {0.26659686674274041589, 0.46136289181910899428}},
        {std::polar(1.0, PI / 3), {0.27415567780803773941, 1.01494160640965362502}},
        {{-0.9, 0.1}, {-0.75320048147019173199, 0.07129152810254463049}},
        {{0, 0.99}, {-0.20215874509123277602, 0.90809733095648730708}},
        {{0.7, -0.7}, {0.56271976743378147521, -0.97003335733128203121}},
    };
    for (const auto& r : rows) {
        C got = dilog(r.z);
        CHECK(std::abs(got - r.want) < 1e-12);
        auto gl = dilog(std::complex<long double>(r.z));
        CHECK(std::abs(std::complex<double>(gl) - r.want) < 1e-12);
    }
    CHECK(dilog(C(0)) == C(0));
    CHECK(dilog(C(1)).real() == doctest::Approx(PI * PI / 6));
    CHECK_THROWS_AS(dilog(C(1.01, 0)), DomainError);
    CHECK_THROWS_AS(dilog(C(0, -1.5)), DomainError);
    CHECK_NOTHROW(dilog(C(1 + 1e-13, 0)));

    // reflection identity Li2(z) + Li2(1 - z) = pi^2/6 - log z log(1 - z)
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> ang(-PI, PI), rad(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        C z = std::polar(rad(rng), ang(rng));
        if (std::abs(C(1) - z) > 1) continue;
        C lhs = dilog(z) + dilog(C(1) - z);
        C rhs = PI * PI / 6 - std::log(z) * std::log(C(1) - z);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("Bloch-Wigner function on the unit circle") {
    CHECK(bloch_wigner(0.0) == 0);
    CHECK(bloch_wigner(C(0)) == 0);
    CHECK(bloch_wigner(C(1)) == doctest::Approx(0).epsilon(1e-15));
    CHECK(std::fabs(bloch_wigner(PI)) < 1e-14);
    CHECK(bloch_wigner(PI / 3) == doctest::Approx(1.0149416064097).epsilon(1e-13));
    CHECK(std::fabs(bloch_wigner(PI / 3) - 1.01494160640965362502) < 1e-14);
    CHECK(std::fabs(bloch_wigner(PI / 3 + 2 * PI) - bloch_wigner(PI / 3)) < 1e-13);

    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> ang(1e-6, PI);
    for (int i = 0; i < 100; ++i) {
        double t = ang(rng);
        CHECK(bloch_wigner(-t) == -bloch_wigner(t));
        CHECK(std::fabs(bloch_wigner(t) - bloch_wigner(std::polar(1.0, t))) < 1e-12);
        CHECK(std::fabs(bloch_wigner(t) - dilog(std::polar(1.0, t)).imag()) < 1e-12);
    }
    // off the circle: D(1/z) = -D(z), D(z) = D(1 - 1/z)
    for (int i = 0; i < 50; ++i) {
        C z = std::polar(0.2 + 0.6 * ang(rng) / PI, ang(rng));
        CHECK(std::fabs(bloch_wigner(C(1) / z) + bloch_wigner(z)) < 1e-12);
        CHECK(std::fabs(bloch_wigner(C(1) - C(1) / z) - bloch_wigner(z)) < 1e-11);
    }
}

TEST_CASE("Bloch-Wigner against long partial sums at rational angles") {
    const long N = 1000000;
    for (auto [p, q] : {std::pair{1, 6}, {1, 3}, {1, 4}, {3, 8}, {5, 12}, {7, 18}, {1, 7}}) {
        double t = 2 * PI * p / q;
        double tail = 2 / (std::fabs(std::sin(t / 2)) * double(N + 1) * double(N + 1));
        CHECK(std::fabs(bloch_wigner(t) - sine_partial_sum(t, N)) <= tail + 1e-12);
    }
}

TEST_CASE("Ushijima formula on the tetrahedron of M_k") {
    CHECK(calibrate_ushijima_gram() == UshijimaGram::UnitDiagonal);
    CHECK(frozen_ushijima_gram() == UshijimaGram::UnitDiagonal);

    for (int k = 2; k <= 24; k += 2) {
        auto u = ushijima_volume(mkk_angles(k));
        CHECK(std::abs(u.Z1 - C(1)) < 1e-12);
        CHECK(std::abs(u.Z2 + std::polar(1.0, -2 * PI / (3 * k))) < 1e-12);
        CHECK(u.det_gram < 0);
        CHECK(u.ideal_vertices == 1);
        CHECK(u.residue < 1e-10);
        CHECK(u.terms.size() == 16);
    }
    auto u2 = ushijima_volume(mkk_angles(2));
    CHECK(u2.volume == doctest::Approx(2.2836186144).epsilon(1e-10));
    CHECK(std::fabs(u2.volume - 9 * bloch_wigner(PI / 3) / 4) < 1e-12);
    CHECK(std::fabs(u2.det_gram + 5.0625) < 1e-12);
    auto d2 = ushijima_volume(mkk_angles(2), UshijimaGram::DoubledDiagonal);
    CHECK(std::fabs(d2.det_gram + 81) < 1e-10);
    CHECK(std::abs(d2.Z1 - C(1)) > 0.1);

    // the regular ideal tetrahedron is flagged, and its volume is 2 D(e^{i pi/3}) / 2
    const double p3 = PI / 3;
    auto reg = ushijima_volume(UshijimaInput<double>{p3, p3, p3, p3, p3, p3});
    CHECK(reg.ideal_vertices == 4);
    CHECK(std::fabs(reg.volume - bloch_wigner(p3)) < 1e-12);

    // compact regular tetrahedra have det G > 0
    const double a = 1.3;
    CHECK_THROWS_AS(ushijima_volume(UshijimaInput<double>{a, a, a, a, a, a}), NonRealizableAngles);
    CHECK_THROWS_AS(ushijima_volume(UshijimaInput<double>{0, p3, p3, p3, p3, p3}), NonRealizableAngles);
    CHECK_THROWS_AS(ushijima_volume(UshijimaInput<double>{PI, p3, p3, p3, p3, p3}), NonRealizableAngles);
}

TEST_CASE("closed-form volume of M_k") {
    auto v2 = volume_Mkk(2);
    CHECK(std::fabs(v2.volume - 18.2689489153 / 2) < 1e-9);
    CHECK(std::fabs(v2.volume - 9 * bloch_wigner(PI / 3)) < 1e-12);
    CHECK(std::fabs(v2.volume - 9.1344744576846) < 1e-9);
    CHECK(v2.residue < 1e-10);
    CHECK(v2.method == VolumeMethod::ClosedForm);

    double prev = 0;
    for (int k = 2; k <= 100; k += 2) {
        auto v = volume_Mkk(k);
        CHECK(v.volume >= 4.5 * k);
        CHECK(v.volume <= PI * PI * k);
        CHECK(v.volume > prev);
        CHECK(v.residue < 1e-10);
        if (k <= 24) CHECK(v.cross_check_diff < 1e-10);
        prev = v.volume;
    }
    auto v100 = volume_Mkk(100);
    CHECK(v100.volume >= 450);
    CHECK(v100.volume <= 986.96);

    auto l = volume_Mkk<long double>(6);
    CHECK(std::fabs(double(l.volume) - volume_Mkk(6).volume) < 1e-12);
    CHECK_THROWS_AS(volume_Mkk(5), ParityError);
}

TEST_CASE("volume table CSV") {
    auto rows = volume_table({2, 4});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].lower == 9);
    CHECK(std::fabs(rows[0].closed - rows[0].ushijima) < 1e-10);
    auto csv = volume_csv(rows, 10);
    CHECK(csv.rfind("k,vol_closed,vol_ushijima,lower_bound,upper_bound,abs_diff\n", 0) == 0);
    CHECK(csv.find("\n2,9.1344744577,9.1344744577,9.0000000000,19.7392088022,") != std::string::npos);
    CHECK(csv == volume_csv(volume_table({2, 4}), 10));
}
