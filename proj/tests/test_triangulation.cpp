#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cuspmin/errors.hpp"
#include "cuspmin/triangulation.hpp"

using namespace cuspmin;

namespace {

// Edge classes as a set of slot sets, independent of class numbering.
std::set<std::vector<std::pair<int, int>>> partition(const EdgeClassTable& t) {
    std::set<std::vector<std::pair<int, int>>> out;
    for (const auto& c : t.classes) out.insert(c.slots);
    return out;
}

Triangulation rebuild_shuffled(const Triangulation& t, std::mt19937& rng) {
    auto gl = t.gluings();
    std::shuffle(gl.begin(), gl.end(), rng);
    Triangulation r;
    for (const auto& T : t.tetra()) r.add_tet(T.kind);
    for (auto g : gl) {
        if (rng() % 2) r.glue(g.b.tet, g.b.face, g.a.tet, g.a.face, g.map.inverse());
        else r.glue(g.a.tet, g.a.face, g.b.tet, g.b.face, g.map);
    }
    return r;
}

}  // namespace

TEST_CASE("perm4 basics") {
    Perm4 p(1, 2, 0, 3);
    CHECK(p.sign() == 1);
    CHECK(Perm4::transposition(0, 3).sign() == -1);
    CHECK((p * p.inverse()).is_identity());
    for (int i = 0; i < 24; ++i) CHECK(Perm4::from_index(i).index() == i);
    CHECK((p * Perm4(1, 0, 2, 3))[0] == 2);
    for (int e = 0; e < 6; ++e) {
        auto v = edge_vertices(e);
        CHECK(edge_index(v[0], v[1]) == e);
        CHECK(edge_index(v[1], v[0]) == e);
    }
}

TEST_CASE("one-chain") {
    auto c = build_chain(1);
    CHECK(c.tri.size() == 2);
    CHECK(c.tri.gluings().size() == 3);
    auto ec = compute_edge_classes(c.tri);
    CHECK(ec.cusp_incidences() == std::vector<int>{6});
    CHECK(ec.compact_incidences() == std::vector<int>{2, 2, 2});
    std::set<std::string> labels;
    for (const auto& cls : ec.classes)
        if (cls.compact) labels.insert(cls.label);
    CHECK(labels == std::set<std::string>{"a", "b", "c"});
    auto vcs = compute_vertex_classes(c.tri);
    int cusps = 0;
    for (const auto& v : vcs)
        if (v.ideal) {
            ++cusps;
            CHECK(v.link_euler == 0);
        }
    CHECK(cusps == 1);
}

TEST_CASE("chain signs alternate and every tetra carries labels a, b, c") {
    auto c = build_chain(5);
    CHECK(c.tri.size() == 10);
    for (int t = 0; t + 1 < c.tri.size(); ++t) CHECK(c.tri.tet(t).orientation == -c.tri.tet(t + 1).orientation);
    for (int t = 0; t < c.tri.size(); ++t) {
        std::multiset<std::string> s(c.tri.edge_labels[t].begin(), c.tri.edge_labels[t].end());
        CHECK(s == std::multiset<std::string>{"a", "b", "c", "p", "q", "r"});
    }
}

TEST_CASE("end-face label order agrees exactly for odd length") {
    for (int l = 1; l <= 16; ++l) CHECK(chain_label_order_agrees(build_chain(l)) == (l % 2 == 1));
    CHECK_THROWS_AS(build_chain(0), ValidationError);
}

TEST_CASE("closing even chains") {
    auto t = close_chain(build_chain(2), Twist::Left);
    CHECK(t.size() == 4);
    auto ec = compute_edge_classes(t);
    CHECK(ec.compact_incidences() == std::vector<int>{12});
    CHECK(ec.cusp_incidences() == std::vector<int>{6, 6});
    CHECK(validate_minimal(t, 2, 2).pass());

    auto r = close_chain(build_chain(4), Twist::Right);
    CHECK(r.size() == 8);
    auto er = compute_edge_classes(r);
    CHECK(er.compact_incidences() == std::vector<int>{24});
    CHECK(er.cusp_incidences().size() == 4);

    for (int k = 2; k <= 16; k += 2) {
        CHECK(validate_minimal(build_mkk(k, Twist::Left), k, k).pass());
        CHECK(validate_minimal(build_mkk(k, Twist::Right), k, k).pass());
    }
}

TEST_CASE("closing errors") {
    CHECK_THROWS_AS(close_chain(build_chain(3), Twist::Left), ChainParityError);
    CHECK_THROWS_AS(close_chain(build_chain(5), Twist::Right), ChainParityError);
    CHECK_THROWS_AS(close_chain(build_chain(4), Twist::Identity), IdentityTwistError);
}

TEST_CASE("identity closure has three compact edges and fails validation") {
    auto t = glue_chain_ends(build_chain(4), Perm4());
    auto ec = compute_edge_classes(t);
    CHECK(ec.compact_count() == 3);
    auto rep = validate_minimal(t, 4, 4);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("disconnected input fails validation") {
    Triangulation t;
    for (int rep = 0; rep < 2; ++rep) {
        auto c = build_chain(2);
        int off = append_triangulation(t, c.tri);
        t.glue(off + 3, 3, off, 3, Perm4(1, 2, 0, 3));
    }
    t.orient();
    auto r = validate_minimal(t, 4, 4);
    CHECK_FALSE(r.pass());
    bool conn_failed = false;
    for (const auto& c : r.checks)
        if (c.name == "connected") conn_failed = !c.pass;
    CHECK(conn_failed);
}

TEST_CASE("two chains around a compact tetrahedron") {
    auto t = build_mk1k(0, 1, TwistChoice::A, TwistChoice::A);
    CHECK(t.size() == 3);
    auto ec = compute_edge_classes(t);
    CHECK(ec.compact_incidences() == std::vector<int>{12});
    CHECK(ec.cusp_incidences() == std::vector<int>{6});

    auto t13 = build_mk1k(1, 3, TwistChoice::A, TwistChoice::B);
    CHECK(t13.size() == 9);
    auto e13 = compute_edge_classes(t13);
    CHECK(e13.compact_incidences() == std::vector<int>{30});
    CHECK(e13.cusp_incidences().size() == 4);

    auto t03 = build_mk1k(0, 3, TwistChoice::B, TwistChoice::A);
    auto e03 = compute_edge_classes(t03);
    CHECK(e03.compact_incidences() == std::vector<int>{24});
    CHECK(e03.cusp_incidences() == std::vector<int>{6, 6, 6});

    CHECK_THROWS_AS(build_mk1k(2, 2, TwistChoice::A, TwistChoice::A), ParityError);
    CHECK_THROWS_AS(build_mk1k(3, 1, TwistChoice::A, TwistChoice::A), InvalidPartition);
}

TEST_CASE("every admissible two-chain build is a minimal triangulation") {
    for (int k = 1; k <= 12; ++k)
        for (int i = 0; i <= k / 2; ++i) {
            int j = k - i;
            if (i % 2 == 0 && j % 2 == 0) continue;
            for (auto a : {TwistChoice::A, TwistChoice::B})
                for (auto b : {TwistChoice::A, TwistChoice::B}) {
                    auto t = build_mk1k(i, j, a, b);
                    auto rep = validate_minimal(t, k + 1, k);
                    INFO("i=" << i << " j=" << j << "\n" << rep.summary());
                    CHECK(rep.pass());
                }
        }
}

TEST_CASE("edge classes do not depend on gluing order") {
    std::mt19937 rng(20240607);
    std::vector<Triangulation> samples = {build_mkk(4, Twist::Left), build_mk1k(1, 4, TwistChoice::B, TwistChoice::A),
                                          build_chain(3).tri};
    for (const auto& t : samples) {
        auto ref = partition(compute_edge_classes(t));
        for (int rep = 0; rep < 20; ++rep) CHECK(partition(compute_edge_classes(rebuild_shuffled(t, rng))) == ref);
    }
}

TEST_CASE("slot bookkeeping") {
    for (const auto& t : {build_mkk(6, Twist::Left), build_mk1k(2, 3, TwistChoice::A, TwistChoice::A)}) {
        int glued = t.glued_slot_count();
        CHECK(glued == 2 * int(t.gluings().size()));
        CHECK(glued + (4 * t.size() - glued) == 4 * t.size());
    }
    auto c = build_chain(3);
    CHECK(c.tri.glued_slot_count() == 4 * c.tri.size() - 2);
}

TEST_CASE("relabeling a tetrahedron keeps the combinatorics") {
    auto t = build_mk1k(1, 2, TwistChoice::A, TwistChoice::B);
    auto before = compute_edge_classes(t).compact_incidences();
    t.relabel_tet(0, Perm4(2, 0, 3, 1));
    CHECK(compute_edge_classes(t).compact_incidences() == before);
    CHECK(validate_minimal(t, 4, 3).pass());
}

TEST_CASE("json round trip") {
    auto t = build_mk1k(1, 2, TwistChoice::B, TwistChoice::A);
    std::string s = to_json(t);
    auto u = triangulation_from_json(s);
    CHECK(to_json(u) == s);
    CHECK(u.meta == t.meta);
    CHECK(validate_minimal(u, 4, 3).pass());
    CHECK_THROWS_AS(triangulation_from_json("{\"tetra\":[{\"id\":0,\"kind\":\"x\",\"ideal_vertex\":null}],"
                                            "\"gluings\":[]}"),
                    ValidationError);
}
