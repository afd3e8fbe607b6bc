#include "cuspmin/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cuspmin/census.hpp"
#include "cuspmin/errors.hpp"
#include "cuspmin/exactnum.hpp"
#include "cuspmin/geometry.hpp"
#include "cuspmin/spine.hpp"

namespace cuspmin {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the first failing condition of a criterion.
struct Tally {
    CriterionResult r;
    int checks = 0;

    Tally(int id, std::string name, double limit) {
        r.id = id;
        r.name = std::move(name);
        r.pass = true;
        r.time_limit = limit;
    }
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = what;
        }
    }
    CriterionResult finish(Clock::time_point t0, const std::string& summary) {
        r.seconds = since(t0);
        if (r.pass && r.seconds > r.time_limit) {
            r.pass = false;
            r.detail = "took " + std::to_string(r.seconds) + " s";
        }
        if (r.pass) r.detail = summary + " (" + std::to_string(checks) + " checks)";
        return r;
    }
};

std::string kstr(const char* what, int k) { return std::string(what) + " at k = " + std::to_string(k); }

std::set<std::string> hashes(const std::vector<FamilyMember>& v) {
    std::set<std::string> s;
    for (const auto& m : v) s.insert(m.canonical_hash);
    return s;
}

template <class F>
void guarded(Tally& t, const std::string& what, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        t.expect(false, what + ": " + e.what());
    }
}

}  // namespace

CriterionResult check_census(const VerifyOptions&) {
    Tally t(1, "census counts", 10 + 300);
    auto t0 = Clock::now();
    guarded(t, "census", [&] {
        auto c0 = Clock::now();
        for (int k = 2; k <= 8; k += 2) t.expect(enumerate_family(Family::Mkk, k).size() == 1, kstr("|Mkk| != 1", k));
        for (int k : {3, 5, 7}) t.expect(enumerate_family(Family::Mkk, k).empty(), kstr("|Mkk| != 0", k));
        const int want[9] = {0, 1, 1, 2, 1, 3, 2, 4, 2};
        for (int k = 1; k <= 8; ++k)
            t.expect(int(enumerate_family(Family::Mk1k, k).size()) == want[k], kstr("|Mk1k| wrong", k));
        double constructive = since(c0);
        t.expect(constructive < 10, "constructive path over 10 s");

        auto b0 = Clock::now();
        for (int k = 1; k <= 3; ++k) {
            auto bf = brute_force_census(Family::Mkk, k);
            t.expect(hashes(bf.classes) == hashes(enumerate_family(Family::Mkk, k)), kstr("Mkk oracle disagrees", k));
        }
        for (int k = 1; k <= 4; ++k) {
            auto bf = brute_force_census(Family::Mk1k, k);
            t.expect(hashes(bf.classes) == hashes(enumerate_family(Family::Mk1k, k)), kstr("Mk1k oracle disagrees", k));
        }
        t.expect(since(b0) < 300, "brute-force oracle over 5 min");
    });
    return t.finish(t0, "|Mkk| = 1,0,1,0,1,0,1 for k = 2..8; |Mk1k| = 1,1,2,1,3,2,4,2 for k = 1..8; oracle agrees");
}

CriterionResult check_isometries(const VerifyOptions&) {
    Tally t(2, "isometry groups", 60);
    auto t0 = Clock::now();
    guarded(t, "isometries", [&] {
        for (int k : {2, 4, 6}) {
            auto g = automorphism_group(build_mkk(k, Twist::Left));
            t.expect(g.order() == 6 * k, kstr("|Aut| != 6k", k));
            t.expect(2 * g.orientation_preserving_order() == g.order(), kstr("orientation index != 2", k));
            t.expect(g.dihedral && g.dihedral->verified, kstr("no dihedral certificate", k));
            if (!g.dihedral) continue;
            const auto& r = g.elements[g.dihedral->r];
            const auto& s = g.elements[g.dihedral->t];
            t.expect(element_order(s) == 3 * k, kstr("rotation order != 3k", k));
            t.expect(!r.is_identity() && r.compose(r).is_identity(), kstr("reflection is not an involution", k));
            t.expect(r.compose(s).compose(r) == s.inverse(), kstr("r t r != t^-1", k));
        }
        for (int k = 1; k <= 6; ++k)
            for (const auto& m : enumerate_family(Family::Mk1k, k)) {
                int order = automorphism_group(m.tri).order();
                bool eq = m.invariant && m.invariant->i == m.invariant->j;
                t.expect(order == (eq ? 2 : 1), kstr("|Aut| does not match i = j", k));
            }
    });
    return t.finish(t0, "|Aut(M_k)| = 6k, dihedral; |Aut| = 2 iff i = j");
}

CriterionResult check_dehn_filling(const VerifyOptions&) {
    Tally t(3, "Dehn filling", 120);
    auto t0 = Clock::now();
    guarded(t, "filling", [&] {
        for (int k : {2, 4}) {
            auto m = build_mkk(k, Twist::Left);
            auto target = build_mk1k(0, k - 1, TwistChoice::A, TwistChoice::A);
            for (int c = 0; c < k; ++c)
                for (auto s : theorem_slopes()) {
                    auto f = dehn_fill(m, c, s);
                    t.expect(bool(is_isomorphic(f.tri, target)),
                             kstr("filling not isomorphic to (0, k-1)", k) + " cusp " + std::to_string(c) + " slope " +
                                 std::to_string(s.p) + "/" + std::to_string(s.q));
                }
        }
        auto f = dehn_fill(build_mkk(2, Twist::Left), 0, model_slope(), SlopeConvention::Proof);
        const auto& tr = f.transcript;
        t.expect(tr.intersection_points == 3, "model slope: intersection points != 3");
        t.expect(tr.complementary_faces.size() == 4, "model slope: J faces != 4");
        t.expect(tr.final_vertices == 3 && tr.final_edges == 6 && tr.final_faces == 2,
                 "model slope: final cells != (3, 6, 2)");
    });
    return t.finish(t0, "all theorem slopes on all cusps for k = 2, 4; model slope cells 3 / J1..J4 / (3, 6, 2)");
}

CriterionResult check_volume(const VerifyOptions& o) {
    Tally t(4, "volume", 30);
    auto t0 = Clock::now();
    constexpr double pi = std::numbers::pi;
    guarded(t, "volume", [&] {
        double v2 = volume_Mkk(2).volume;
        t.expect(std::fabs(v2 - 18.2689489153 / 2) < 1e-9, "vol(M_2) not within 1e-9 of 18.2689489153 / 2");
        for (int k = 2; k <= 100; k += 2) {
            auto v = volume_Mkk(k);
            t.expect(4.5 * k <= v.volume && v.volume <= pi * pi * k, kstr("bounds fail", k));
            if (k > 24) continue;
            t.expect(v.cross_check_diff <= 1e-10, kstr("closed form vs Ushijima > 1e-10", k));
            t.expect(std::abs(v.Z1 - 1.0) <= 1e-12, kstr("Z1 != 1", k));
            t.expect(std::abs(v.Z2 + std::polar(1.0, -2 * pi / (3 * k))) <= 1e-12, kstr("Z2 != -e^{-2 pi i/3k}", k));
        }
        // seeded spot checks of the special functions feeding the volume
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> ang(1e-3, pi);
        for (int i = 0; i < (o.quick ? 20 : 100); ++i) {
            double a = ang(rng);
            t.expect(bloch_wigner(-a) == -bloch_wigner(a), "D is not odd");
            t.expect(std::fabs(bloch_wigner(a) - dilog(std::polar(1.0, a)).imag()) < 1e-12, "D != Im Li2 on the circle");
        }
    });
    char v2[32];
    std::snprintf(v2, sizeof v2, "%.10f", volume_Mkk(2).volume);
    return t.finish(t0, std::string("vol(M_2) = ") + v2 + "; Ushijima agrees to k = 24; bounds to k = 100");
}

CriterionResult check_arithmetic(const VerifyOptions&) {
    Tally t(5, "arithmetic invariants", 120);
    auto t0 = Clock::now();
    guarded(t, "arithmetic", [&] {
        for (int k = 2; k <= 20; k += 2) {
            auto g = gram_exact(k);
            auto z2 = g.z_sq;
            t.expect(g.det_Gprime == CycloElement(g.conductor, -108) * z2 * z2, kstr("det G' != -108 z^4", k));
        }
        for (int k = 2; k <= 32; k += 2) {
            auto v = arithmetic_verdict(k);
            bool p2 = is_power_of_two(k);
            t.expect(v.norms.direct == v.norms.factored, kstr("resultant factorization mismatch", k));
            t.expect(v.norms.cyclotomic == (p2 ? 16 : 1), kstr("resultant product wrong", k));
            t.expect(v.integral_traces == !p2, kstr("integrality verdict wrong", k));
            t.expect(v.quasi_arithmetic == (k == 2), kstr("quasi-arithmetic verdict wrong", k));
            t.expect(v.trace_field_degree == euler_phi(3 * k), kstr("trace field degree != phi(3k)", k));
        }
        t.expect(arithmetic_verdict(2).trace_field_degree == 2, "degree at k = 2 is not 2");
        t.expect(arithmetic_verdict(2).discriminant_class_radicand == -3, "field at k = 2 is not Q(sqrt -3)");
    });
    return t.finish(t0, "det G' = -108 z^4 to k = 20; norms 16/1, integrality, degrees to k = 32");
}

CriterionResult check_structure(const VerifyOptions&) {
    Tally t(6, "structural properties", 60);
    auto t0 = Clock::now();
    guarded(t, "structure", [&] {
        for (int k = 1; k <= 8; ++k)
            for (auto fam : {Family::Mkk, Family::Mk1k})
                for (const auto& m : enumerate_family(fam, k)) {
                    int g = m.tri.size() / 2 + m.tri.size() % 2;
                    auto s = dualize(m.tri);
                    t.expect(s.euler_characteristic() == 1 - g, kstr("spine chi != 1 - g", k));
                    t.expect(big_face_word(s).canonical.size() == size_t(6 * g), kstr("big face length != 6g", k));
                }
        for (int k = 2; k <= 24; k += 2) {
            auto G = gram_numeric(k);
            auto E = gram_matrix_exact(k);
            double worst = 0;
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) worst = std::max(worst, std::fabs(G(i, j) - double(E[i][j].embed().real())));
            t.expect(worst <= 1e-10, kstr("exact vs float Gram > 1e-10", k));
            auto sig = gram_numeric_signature(k);
            t.expect(sig.positive == 3 && sig.negative == 1, kstr("signature != (3,1)", k));
        }
    });
    return t.finish(t0, "chi = 1 - g and |G| = 6g to k = 8; Gram cross-check and signature (3,1) to k = 24");
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& o) {
    return {check_census(o), check_isometries(o), check_dehn_filling(o),
            check_volume(o), check_arithmetic(o), check_structure(o)};
}

std::string format_line(const CriterionResult& r, bool with_time) {
    std::ostringstream os;
    os << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail;
    if (with_time) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " [%.2f s]", r.seconds);
        os << buf;
    }
    return os.str();
}

}  // namespace cuspmin
