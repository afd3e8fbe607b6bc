#include <doctest.h>

#include <json.hpp>

#include "cuspmin/census.hpp"
#include "cuspmin/errors.hpp"
#include "cuspmin/spine.hpp"

using namespace cuspmin;

namespace {

std::vector<std::string> ml_word(int k, const char* second, const char* third) {
    std::vector<std::string> w;
    for (const char* x : {"A", second, third})
        for (int i = 1; i <= 2 * k; ++i) w.push_back(x + std::to_string(i));
    return w;
}

std::vector<Triangulation> small_census() {
    std::vector<Triangulation> out;
    for (int k = 1; k <= 8; ++k)
        for (auto f : {Family::Mkk, Family::Mk1k})
            for (auto& m : enumerate_family(f, k)) out.push_back(m.tri);
    return out;
}

}  // namespace

TEST_CASE("dual spine cell counts") {
    for (const auto& t : small_census()) {
        auto s = dualize(t);
        int g = t.size() / 2 + t.size() % 2;
        CHECK(s.vertex_count() == t.size());
        CHECK(s.edge_count() == 2 * t.size());
        CHECK(s.euler_characteristic() == 1 - g);
        int hex = 0, big = 0;
        for (const auto& f : s.faces) {
            if (f.tag == FaceTag::Hexagonal) {
                ++hex;
                CHECK(f.word.size() == 6);
            } else if (f.tag == FaceTag::BigFace) {
                ++big;
                CHECK(f.word.size() == size_t(6 * g));
            }
        }
        CHECK(big == 1);
        CHECK(s.face_count() == hex + 1);
        for (int v : s.valence()) CHECK(v == 3);
    }
}

TEST_CASE("big face words of the chain closures") {
    for (int k : {2, 4, 6}) {
        auto l = big_face_word(dualize(build_mkk(k, Twist::Left)));
        auto r = big_face_word(dualize(build_mkk(k, Twist::Right)));
        CHECK(l.canonical == ml_word(k, "B", "C"));
        CHECK(r.canonical == ml_word(k, "C", "B"));
        // the vertex word is (v1 .. v2k) three times
        REQUIRE(l.vertices.size() == size_t(6 * k));
        for (size_t i = 0; i < l.vertices.size(); ++i) CHECK(l.vertices[i] == int(i % (2 * k)));
    }
}

TEST_CASE("big face words with a compact tetrahedron") {
    auto w = big_face_word(dualize(build_mk1k(0, 1, TwistChoice::A, TwistChoice::A)));
    CHECK(w.diamonds.size() == 12);
    for (int i = 0; i <= 3; ++i)
        for (int j = std::max(i, 1); i + j <= 6; ++j) {
            if (i % 2 == 0 && j % 2 == 0) continue;
            auto t = build_mk1k(i, j, TwistChoice::A, TwistChoice::B);
            auto d = big_face_word(dualize(t)).diamonds;
            CHECK(d.size() == size_t(6 * (i + j + 1)));
            int e = 0;
            for (const auto& x : d) e += x[0] == 'E';
            CHECK(e == 6);
        }
}

TEST_CASE("redualizing returns the triangulation") {
    for (const auto& t : small_census()) {
        auto back = redualize(dualize(t));
        CHECK(back.size() == t.size());
        CHECK(is_isomorphic(t, back));
    }
}

TEST_CASE("primitive moves") {
    auto s0 = dualize(build_mkk(2, Twist::Left));
    auto s = s0;
    int v = s.subdivide_edge(0, "x");
    CHECK(s.vertex_count() == s0.vertex_count() + 1);
    CHECK(s.euler_characteristic() == s0.euler_characteristic());
    int e = s.delete_vertex(v, "y");
    CHECK(s.edges[e].label == "y");
    CHECK(s.euler_characteristic() == s0.euler_characteristic());
    CHECK(redualize(s).size() == 4);

    int f = 0;
    while (s0.faces[f].tag != FaceTag::Hexagonal) ++f;
    s = s0;
    int chord = s.split_face(f, 0, 3, "d");
    CHECK(s.face_count() == s0.face_count() + 1);
    CHECK(s.edge_count() == s0.edge_count() + 1);
    int merged = s.delete_edge(chord);
    CHECK(s.faces[merged].word.size() == 6);
    CHECK(s.face_count() == s0.face_count());

    CHECK_THROWS_AS(s.delete_vertex(0), SurgeryError);
    CHECK_THROWS_AS(s.split_face(f, 2, 1), SurgeryError);
}

TEST_CASE("no big face") {
    auto s = dualize(build_mkk(2, Twist::Left));
    for (size_t f = 0; f < s.faces.size(); ++f)
        if (s.faces[f].tag == FaceTag::BigFace) s.remove_face(int(f));
    CHECK_THROWS_AS(big_face_word(s), NoBigFace);
}

TEST_CASE("spine json") {
    auto j = nlohmann::json::parse(spine_to_json(dualize(build_mkk(2, Twist::Left))));
    CHECK(j["vertices"].size() == 4);
    CHECK(j["edges"].size() == 8);
    CHECK(j["faces"].size() == 3);
    CHECK(j["euler"] == -1);
    CHECK(j["faces"][0]["tag"] == "big");
}

TEST_CASE("slope calibration is frozen") {
    auto cal = calibrate_slopes(2);
    CHECK(cal.proof == slope_basis(SlopeConvention::Proof));
    CHECK(cal.theorem == slope_basis(SlopeConvention::Theorem));
    CHECK(cal.proof == Basis{1, 0, 0, -1});
    CHECK(cal.theorem == Basis{1, 0, 0, 1});
    CHECK(cal.change == Basis{1, 0, 0, -1});
    CHECK(cal.proof_candidates > 0);
    CHECK(cal.theorem_candidates > 0);
}

TEST_CASE("model slope surgery") {
    auto t = build_mkk(2, Twist::Left);
    auto r = dehn_fill(t, 0, model_slope(), SlopeConvention::Proof);
    const auto& tr = r.transcript;
    CHECK(r.curve.normal == std::array<int, 3>{1, 2, 0});
    CHECK(tr.intersection_points == 3);
    CHECK(tr.complementary_faces.size() == 4);
    CHECK(tr.deleted_edges.size() == 4);
    CHECK(tr.deleted_vertices.size() == 4);
    CHECK(tr.new_edges.size() == 3);
    CHECK(tr.final_vertices == 3);
    CHECK(tr.final_edges == 6);
    CHECK(tr.final_faces == 2);
    CHECK(r.spine.euler_characteristic() == -1);
    CHECK(tr.candidates_valid >= 1);
    CHECK(replay(dualize(t), tr) == r.spine);
    // one of the joined edges closes up at the surviving new vertex
    int loops = 0;
    for (int e : tr.new_edges) loops += r.spine.edges[e].tail == r.spine.edges[e].head;
    CHECK(loops == 1);
    CHECK(validate_minimal(r.tri, 2, 1).pass());
    CHECK(is_isomorphic(r.tri, build_mk1k(0, 1, TwistChoice::A, TwistChoice::A)));
}

TEST_CASE("all supported fillings land on the trivial partition") {
    for (int k : {2, 4, 6}) {
        auto t = build_mkk(k, Twist::Left);
        auto target = build_mk1k(0, k - 1, TwistChoice::A, TwistChoice::A);
        for (int c = 0; c < k; ++c)
            for (auto s : theorem_slopes()) {
                CAPTURE(k);
                CAPTURE(c);
                CAPTURE(s.p);
                CAPTURE(s.q);
                auto f = dehn_fill(t, c, s);
                CHECK(validate_minimal(f.tri, k, k - 1).pass());
                CHECK(partition_invariant(f.tri) == PartitionInvariant{0, k - 1});
                CHECK(is_isomorphic(f.tri, target));
                CHECK(f.transcript.cusp == c);
                auto n = f.curve.normal;
                std::sort(n.begin(), n.end());
                CHECK(n == std::array<int, 3>{0, 1, 2});
            }
    }
}

TEST_CASE("filling rejects unsupported input") {
    auto t = build_mkk(2, Twist::Left);
    CHECK_THROWS_AS(dehn_fill(t, 0, {1, 1}), UnsupportedSlope);
    CHECK_THROWS_AS(dehn_fill(t, 0, {1, 0}), UnsupportedSlope);
    CHECK_THROWS_AS(dehn_fill(t, 0, model_slope(), SlopeConvention::Theorem), UnsupportedSlope);
    CHECK_THROWS_AS(dehn_fill(t, 0, {2, -3}), UnsupportedSlope);
    CHECK_NOTHROW(dehn_fill(t, 1, {-3, -1}));
    CHECK_THROWS_AS(dehn_fill(t, 2, {3, 1}), ValidationError);
    CHECK_THROWS_AS(dehn_fill(build_mk1k(0, 1, TwistChoice::A, TwistChoice::A), 0, {3, 1}), ValidationError);
}
