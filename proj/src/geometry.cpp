#include "cuspmin/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "cuspmin/errors.hpp"

namespace cuspmin {

namespace {

template <class S>
constexpr S pi = std::numbers::pi_v<S>;

template <class S>
S eps() {
    return std::numeric_limits<S>::epsilon();
}

void check_k(int k) {
    if (k < 2 || k % 2) throw ParityError("k must be even and at least 2, got " + std::to_string(k));
}

// B_2n / (2n+1)! through zeta(2n); the series below use these coefficients.
template <class S>
const std::vector<S>& bernoulli_coeffs() {
    static const std::vector<S> c = [] {
        std::vector<S> v;
        S two_pi_sq = 4 * pi<S> * pi<S>, p = 1;
        for (int n = 1; n <= 40; ++n) {
            p *= two_pi_sq;
            S z = S(std::riemann_zeta((long double)(2 * n)));
            v.push_back((n % 2 ? 2 : -2) * z / (p * (2 * n + 1)));
        }
        return v;
    }();
    return c;
}

// zeta(2n) / (n (2n+1) (2 pi)^2n), for the Clausen expansion
template <class S>
const std::vector<S>& clausen_coeffs() {
    static const std::vector<S> c = [] {
        std::vector<S> v;
        S two_pi_sq = 4 * pi<S> * pi<S>, p = 1;
        for (int n = 1; n <= 60; ++n) {
            p *= two_pi_sq;
            v.push_back(S(std::riemann_zeta((long double)(2 * n))) / (p * n * (2 * n + 1)));
        }
        return v;
    }();
    return c;
}

template <class S>
std::complex<S> dilog_any(std::complex<S> z) {
    if (std::norm(z) <= 1) return dilog(z);
    // inversion
    std::complex<S> l = std::log(-z);
    return -dilog(S(1) / z) - pi<S> * pi<S> / 6 - l * l / S(2);
}

}  // namespace

template <class S>
GeometricData<S> geometry_params(int k) {
    check_k(k);
    GeometricData<S> g;
    g.k = k;
    S t = pi<S> / (3 * k);
    g.theta = t;
    if (!(pi<S> / 3 + 2 * t < pi<S>)) throw DomainError("angles do not fit a hyperbolic triangle");
    S c = std::cos(t), s = std::sin(t);
    g.cosh_d = (S(0.5) + c * c) / (s * s);
    g.cosh_l2 = (S(0.5) + c * c) / (S(0.5) + std::cos(2 * t));
    // hexagon rule, in its second form
    S hex = 1 + 1 / (g.cosh_d - 1);
    g.cosh_l1 = 3 * c / std::sqrt(1 + 2 * std::cos(2 * t));
    // right-angled pentagon: the side opposite the two far sides
    S sinh_d = std::sqrt(g.cosh_d * g.cosh_d - 1), sinh_l2 = std::sqrt(g.cosh_l2 * g.cosh_l2 - 1);
    g.cosh_p = sinh_d * sinh_l2;
    S tol = S(1e-12) * std::max<S>(1, g.cosh_p);
    if (std::fabs(hex - g.cosh_l2) > tol) throw ConsistencyError("hexagon rule disagrees with the closed form for l2");
    if (std::fabs(g.cosh_l1 - s * g.cosh_p) > tol)
        throw ConsistencyError("cosh l1 != sin(theta) cosh p at k = " + std::to_string(k));
    for (S x : {g.cosh_d, g.cosh_p, g.cosh_l1, g.cosh_l2})
        if (!(x >= 1)) throw ConsistencyError("a hyperbolic cosine is below 1");
    g.z = -2 * c;
    g.l1_tilde = -2 * g.cosh_l1;
    g.l2_tilde = -2 * g.cosh_l2;
    return g;
}

template <class S>
Eigen::Matrix<S, 7, 7> gram_numeric(int k) {
    auto g = geometry_params<S>(k);
    S z = g.z, a = g.l1_tilde, b = g.l2_tilde;
    Eigen::Matrix<S, 7, 7> G;
    G << 2, -1, -1, z, 0, 0, a,
        -1, 2, -1, z, a, 0, 0,
        -1, -1, 2, z, 0, a, 0,
        z, z, z, 2, 0, 0, 0,
        0, a, 0, 0, 2, b, b,
        0, 0, a, 0, b, 2, b,
        a, 0, 0, 0, b, b, 2;
    return G;
}

template <class S>
SignatureResult<S> gram_numeric_signature(int k) {
    auto G = gram_numeric<S>(k);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<S, 7, 7>> es(G);
    if (es.info() != Eigen::Success) throw SignatureError("eigensolver failed");
    SignatureResult<S> r;
    r.eigenvalues = es.eigenvalues();
    const S tol = S(1e-8);
    std::vector<int> kept;
    for (int i = 0; i < 7; ++i) {
        S l = r.eigenvalues[i];
        if (std::fabs(l) <= tol) {
            ++r.zero;
        } else {
            (l > 0 ? r.positive : r.negative)++;
            kept.push_back(i);
        }
    }
    if (r.positive != 3 || r.negative != 1 || r.zero != 3)
        throw SignatureError("Gram matrix has signature (" + std::to_string(r.positive) + "," +
                             std::to_string(r.negative) + ") with " + std::to_string(r.zero) + " zero eigenvalues");
    // G = sum l_i v_i v_i^T over the kept eigenpairs
    for (int j = 0; j < 4; ++j) {
        S l = r.eigenvalues[kept[j]];
        r.form[j] = l > 0 ? 1 : -1;
        r.normals.row(j) = std::sqrt(std::fabs(l)) * es.eigenvectors().col(kept[j]).transpose();
    }
    Eigen::Matrix<S, 4, 4> J = Eigen::Matrix<S, 4, 4>::Zero();
    for (int j = 0; j < 4; ++j) J(j, j) = S(r.form[j]);
    Eigen::Matrix<S, 7, 7> back = r.normals.transpose() * J * r.normals;
    r.reconstruction_error = (back - G).cwiseAbs().maxCoeff();
    if (r.reconstruction_error > tol) throw SignatureError("normals do not reproduce the Gram matrix");
    return r;
}

template <class S>
std::complex<S> dilog(std::complex<S> z) {
    using C = std::complex<S>;
    S nz = std::norm(z);
    if (nz > (1 + S(1e-12)) * (1 + S(1e-12))) throw DomainError("dilog needs |z| <= 1");
    if (nz == 0) return 0;
    if (z == C(1)) return pi<S> * pi<S> / 6;
    C u, rest = 0;
    S sign = 1;
    if (z.real() <= S(0.5)) {
        u = -std::log(C(1) - z);
    } else {
        // Li2(z) = -Li2(1-z) + pi^2/6 - log(z) log(1-z)
        u = -std::log(z);
        rest = u * std::log(C(1) - z) + pi<S> * pi<S> / 6;
        sign = -1;
    }
    // sum of B_n u^(n+1) / (n+1)!
    C u2 = u * u, p = u, sum = u - u2 / S(4);
    for (S c : bernoulli_coeffs<S>()) {
        p *= u2;
        C t = c * p;
        sum += t;
        if (std::abs(t) <= eps<S>() * std::abs(sum)) break;
    }
    return sign * sum + rest;
}

template <class S>
S bloch_wigner(S theta) {
    // reduce to (-pi, pi], then Clausen's expansion of the sine series
    S t = std::remainder(theta, 2 * pi<S>);
    if (t == 0) return 0;
    S a = std::fabs(t);
    S sum = a - a * std::log(a), p = a;
    for (S c : clausen_coeffs<S>()) {
        p *= a * a;
        S term = c * p;
        sum += term;
        if (term <= eps<S>() * sum) break;
    }
    return t < 0 ? -sum : sum;
}

template <class S>
S bloch_wigner(std::complex<S> z) {
    if (z == std::complex<S>(0)) return 0;
    S sign = 1;
    if (std::norm(z) > 1) {
        z = S(1) / z;
        sign = -1;
    }
    return sign * (dilog(z).imag() + std::arg(std::complex<S>(1) - z) * std::log(std::abs(z)));
}

template <class S>
UshijimaInput<S> mkk_angles(int k) {
    check_k(k);
    S t = pi<S> / (3 * k), p3 = pi<S> / 3;
    return {p3, p3, t, p3, t, t};
}

UshijimaGram frozen_ushijima_gram() { return UshijimaGram::UnitDiagonal; }

namespace {

template <class S>
VolumeResult<S> ushijima_core(const UshijimaInput<S>& in, UshijimaGram gram) {
    using C = std::complex<S>;
    const S t12 = in.t12, t13 = in.t13, t14 = in.t14, t23 = in.t23, t24 = in.t24, t34 = in.t34;
    for (S x : {t12, t13, t14, t23, t24, t34})
        if (!(x > 0 && x < pi<S>)) throw NonRealizableAngles("dihedral angles must lie in (0, pi)");
    VolumeResult<S> r;
    r.method = VolumeMethod::Ushijima;
    for (S sum : {t23 + t24 + t34, t13 + t14 + t34, t12 + t14 + t24, t12 + t13 + t23})
        r.ideal_vertices += std::fabs(sum - pi<S>) <= S(1e-12);

    S diag = gram == UshijimaGram::UnitDiagonal ? 1 : 2;
    Eigen::Matrix<S, 4, 4> G;
    G << 1, -std::cos(t12), -std::cos(t13), -std::cos(t14),
        -std::cos(t12), 1, -std::cos(t23), -std::cos(t24),
        -std::cos(t13), -std::cos(t23), 1, -std::cos(t34),
        -std::cos(t14), -std::cos(t24), -std::cos(t34), 1;
    G *= diag;
    r.det_gram = G.determinant();
    if (!(r.det_gram < 0)) throw NonRealizableAngles("Gram determinant is not negative; no hyperbolic tetrahedron");
    C sq = std::sqrt(C(r.det_gram));

    // a, b, c on the edges at vertex 4; d, e, f on the opposite edges
    auto ex = [](S x) { return std::polar(S(1), x); };
    C a = ex(t12), b = ex(t13), c = ex(t23), d = ex(t34), e = ex(t24), f = ex(t14);
    S num = std::sin(t12) * std::sin(t34) + std::sin(t13) * std::sin(t24) + std::sin(t23) * std::sin(t14);
    C den = a * d + b * e + c * f + a * b * f + a * c * e + b * c * d + d * e * f + a * b * c * d * e * f;
    r.Z1 = S(-2) * (num - sq) / den;
    r.Z2 = S(-2) * (num + sq) / den;

    auto U = [&](C z) {
        std::array<C, 8> t{dilog_any(z),          dilog_any(a * b * d * e * z), dilog_any(a * c * d * f * z),
                           dilog_any(b * c * e * f * z), dilog_any(-a * b * c * z), dilog_any(-a * e * f * z),
                           dilog_any(-b * d * f * z), dilog_any(-c * d * e * z)};
        for (auto x : t) r.terms.push_back(x);
        return (t[0] + t[1] + t[2] + t[3] - t[4] - t[5] - t[6] - t[7]) / S(2);
    };
    r.U1 = U(r.Z1);
    r.U2 = U(r.Z2);
    r.volume = (r.U1 - r.U2).imag() / 2;
    return r;
}

}  // namespace

UshijimaGram calibrate_ushijima_gram() {
    auto in = mkk_angles<double>(2);
    std::vector<UshijimaGram> ok;
    for (auto g : {UshijimaGram::UnitDiagonal, UshijimaGram::DoubledDiagonal})
        if (std::abs(ushijima_core(in, g).Z1 - 1.0) < 1e-9) ok.push_back(g);
    if (ok.size() != 1) throw CrossCheckError("no unique Gram convention gives Z1 = 1");
    return ok[0];
}

template <class S>
VolumeResult<S> ushijima_volume(const UshijimaInput<S>& in, UshijimaGram gram) {
    auto r = ushijima_core(in, gram);
    // the same tetrahedron with faces 1 and 4 swapped
    UshijimaInput<S> sw{in.t24, in.t34, in.t14, in.t23, in.t12, in.t13};
    r.residue = std::fabs(ushijima_core(sw, gram).volume - r.volume);
    if (!(r.volume > 0)) throw NonRealizableAngles("Ushijima volume is not positive");
    return r;
}

template <class S>
VolumeResult<S> volume_Mkk(int k) {
    check_k(k);
    using C = std::complex<S>;
    VolumeResult<S> r;
    r.method = VolumeMethod::ClosedForm;
    S s = 2 * pi<S> / (3 * k);
    S d1 = bloch_wigner(2 * pi<S> / 3 + s), d2 = bloch_wigner(pi<S> / 3), d3 = bloch_wigner(2 * pi<S> / 3 - s);
    r.terms = {C(d1), C(d2), C(d3)};
    r.volume = S(1.5) * k * (d1 + 2 * d2 + d3);
    // the same sum read off the dilogarithms before simplification
    auto e = [](S x) { return std::polar(S(1), x); };
    C li = dilog(e(2 * pi<S> / 3 + s)) + dilog(e(pi<S> / 3)) - dilog(-e(2 * pi<S> / 3)) - dilog(-e(pi<S> / 3 + s));
    r.residue = std::fabs(S(1.5) * k * li.imag() - r.volume);

    auto u = ushijima_volume(mkk_angles<S>(k));
    r.Z1 = u.Z1;
    r.Z2 = u.Z2;
    r.U1 = u.U1;
    r.U2 = u.U2;
    r.det_gram = u.det_gram;
    r.ideal_vertices = u.ideal_vertices;
    r.cross_check_k = k;
    r.cross_check_diff = std::fabs(2 * k * u.volume - r.volume);
    if (r.cross_check_diff > S(1e-10) * std::max<S>(1, r.volume / 100))
        throw CrossCheckError("closed form and Ushijima volumes disagree at k = " + std::to_string(k));
    if (!(S(4.5) * k <= r.volume && r.volume <= pi<S> * pi<S> * k))
        throw CrossCheckError("volume outside the linear bounds at k = " + std::to_string(k));
    return r;
}

std::vector<VolumeRow> volume_table(const std::vector<int>& ks) {
    std::vector<VolumeRow> rows;
    for (int k : ks) {
        auto v = volume_Mkk<double>(k);
        double pi2 = std::numbers::pi * std::numbers::pi;
        rows.push_back({k, v.volume, 2 * k * (v.U1 - v.U2).imag() / 2, 4.5 * k, pi2 * k, v.cross_check_diff});
    }
    return rows;
}

std::string volume_csv(const std::vector<VolumeRow>& rows, int precision) {
    std::ostringstream os;
    os << "k,vol_closed,vol_ushijima,lower_bound,upper_bound,abs_diff\n";
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.*f", precision, x);
        return std::string(buf);
    };
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3e", r.diff);
        std::string diff = buf;
        os << r.k << "," << num(r.closed) << "," << num(r.ushijima) << "," << num(r.lower) << "," << num(r.upper) << ","
           << diff << "\n";
    }
    return os.str();
}

#define CUSPMIN_INSTANTIATE(S)                                                          \
    template GeometricData<S> geometry_params<S>(int);                                  \
    template Eigen::Matrix<S, 7, 7> gram_numeric<S>(int);                               \
    template SignatureResult<S> gram_numeric_signature<S>(int);                         \
    template std::complex<S> dilog<S>(std::complex<S>);                                 \
    template S bloch_wigner<S>(S);                                                      \
    template S bloch_wigner<S>(std::complex<S>);                                        \
    template UshijimaInput<S> mkk_angles<S>(int);                                       \
    template VolumeResult<S> ushijima_volume<S>(const UshijimaInput<S>&, UshijimaGram); \
    template VolumeResult<S> volume_Mkk<S>(int);

CUSPMIN_INSTANTIATE(double)
CUSPMIN_INSTANTIATE(long double)

#undef CUSPMIN_INSTANTIATE

}  // namespace cuspmin
