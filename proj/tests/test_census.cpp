#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cuspmin/census.hpp"
#include "cuspmin/errors.hpp"

using namespace cuspmin;

namespace {

// Shuffles tetrahedron indices and vertex labels (keeping ideal vertices at 3).
Triangulation scramble(const Triangulation& t, std::mt19937& rng) {
    int n = t.size();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Perm4> relabel(n);
    for (int x = 0; x < n; ++x) {
        std::array<int, 4> v{0, 1, 2, 3};
        if (t.tet(x).kind == TetKind::NonCompact) std::shuffle(v.begin(), v.begin() + 3, rng);
        else std::shuffle(v.begin(), v.end(), rng);
        relabel[x] = Perm4(v[0], v[1], v[2], v[3]);
    }
    Triangulation r;
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[order[i]] = i;
    for (int i = 0; i < n; ++i) r.add_tet(t.tet(order[i]).kind);
    for (const auto& g : t.gluings()) {
        Perm4 m = relabel[g.b.tet] * g.map * relabel[g.a.tet].inverse();
        r.glue(inv[g.a.tet], relabel[g.a.tet][g.a.face], inv[g.b.tet], relabel[g.b.tet][g.b.face], m);
    }
    r.orient();
    return r;
}

}  // namespace

TEST_CASE("isomorphism basics") {
    auto l = build_mkk(2, Twist::Left);
    auto r = build_mkk(2, Twist::Right);
    auto self = is_isomorphic(l, l);
    REQUIRE(self);
    CHECK(is_valid_iso(l, l, *self));

    auto lr = is_isomorphic(l, r);
    REQUIRE(lr);
    CHECK(is_valid_iso(l, r, *lr));
    // some witness maps every tetrahedron to itself and reverses orientation
    bool found_diagonal = false;
    for (int y = 0; y < r.size(); ++y)
        for (int i = 0; i < 24; ++i) {
            Perm4 q = Perm4::from_index(i);
            if (q[3] != 3) continue;
            auto iso = propagate_iso(l, r, y, q);
            if (!iso) continue;
            bool diag = true;
            for (int x = 0; x < l.size(); ++x) diag = diag && iso->tet_map[x] == x;
            if (diag) {
                found_diagonal = true;
                CHECK(iso->orientation_character == -1);
            }
        }
    CHECK(found_diagonal);
}

TEST_CASE("canonical form is invariant under relabeling") {
    std::mt19937 rng(7);
    for (const auto& t : {build_mkk(4, Twist::Left), build_mk1k(1, 4, TwistChoice::A, TwistChoice::B),
                          build_mk1k(0, 3, TwistChoice::B, TwistChoice::B)}) {
        auto h = canonical_hash(t);
        for (int rep = 0; rep < 10; ++rep) {
            auto s = scramble(t, rng);
            CHECK(canonical_hash(s) == h);
            auto iso = is_isomorphic(t, s);
            REQUIRE(iso);
            CHECK(is_valid_iso(t, s, *iso));
            CHECK(is_valid_iso(s, t, iso->inverse()));
        }
    }
    CHECK(canonical_hash(build_mk1k(1, 4, TwistChoice::A, TwistChoice::A)) !=
          canonical_hash(build_mk1k(0, 5, TwistChoice::A, TwistChoice::A)));
}

TEST_CASE("non-isomorphic members are told apart") {
    auto a = build_mk1k(1, 3, TwistChoice::A, TwistChoice::A);
    auto b = build_mk1k(1, 3, TwistChoice::B, TwistChoice::B);
    CHECK(is_isomorphic(a, b));
    auto c = build_mk1k(0, 5, TwistChoice::A, TwistChoice::A);
    auto d = build_mk1k(2, 3, TwistChoice::A, TwistChoice::A);
    CHECK_FALSE(is_isomorphic(c, d));
}

TEST_CASE("automorphisms of the even-cusp member") {
    for (int k : {2, 4, 6}) {
        auto t = build_mkk(k, Twist::Left);
        auto g = automorphism_group(t);
        CHECK(g.order() == 6 * k);
        CHECK(g.orientation_preserving_order() == 3 * k);
        REQUIRE(g.dihedral);
        CHECK(g.dihedral->verified);
        const auto& r = g.elements[g.dihedral->r];
        const auto& tt = g.elements[g.dihedral->t];
        CHECK(element_order(tt) == 3 * k);
        CHECK(r.compose(r).is_identity());
        CHECK(r.compose(tt).compose(r) == tt.inverse());
        CHECK(tt.tet_map[0] == 2);
        // closure: identity present, products and inverses stay inside
        bool has_id = false;
        for (const auto& e : g.elements) has_id = has_id || e.is_identity();
        CHECK(has_id);
        for (size_t i = 0; i < g.elements.size(); i += 3)
            for (size_t j = 0; j < g.elements.size(); j += 5) {
                auto h = g.elements[i].compose(g.elements[j]);
                CHECK(std::find(g.elements.begin(), g.elements.end(), h) != g.elements.end());
            }
        for (const auto& e : g.elements)
            CHECK(std::find(g.elements.begin(), g.elements.end(), e.inverse()) != g.elements.end());
    }
}

TEST_CASE("automorphisms of the compact-tetrahedron members") {
    CHECK(automorphism_group(build_mk1k(1, 3, TwistChoice::A, TwistChoice::A)).order() == 1);
    CHECK(automorphism_group(build_mk1k(3, 3, TwistChoice::A, TwistChoice::A)).order() == 2);
    CHECK(automorphism_group(build_mk1k(1, 1, TwistChoice::B, TwistChoice::A)).order() == 2);
}

TEST_CASE("family enumeration counts") {
    for (int k = 1; k <= 8; ++k) CHECK(enumerate_family(Family::Mkk, k).size() == (k % 2 ? 0u : 1u));
    const int expected[9] = {0, 1, 1, 2, 1, 3, 2, 4, 2};
    for (int k = 1; k <= 8; ++k) {
        auto fam = enumerate_family(Family::Mk1k, k);
        CHECK(int(fam.size()) == expected[k]);
        std::vector<PartitionInvariant> got, want;
        for (const auto& m : fam) got.push_back(*m.invariant);
        for (int i = 0; 2 * i <= k; ++i)
            if (i % 2 || (k - i) % 2) want.push_back({i, k - i});
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
    auto five = enumerate_family(Family::Mk1k, 5);
    CHECK(five.size() == 3);
}

TEST_CASE("twist variants of one partition are isomorphic") {
    for (int k = 1; k <= 7; ++k)
        for (int i = 0; 2 * i <= k; ++i) {
            int j = k - i;
            if (i % 2 == 0 && j % 2 == 0) continue;
            auto ref = build_mk1k(i, j, TwistChoice::A, TwistChoice::A);
            for (auto a : {TwistChoice::A, TwistChoice::B})
                for (auto b : {TwistChoice::A, TwistChoice::B}) CHECK(is_isomorphic(ref, build_mk1k(i, j, a, b)));
        }
}

TEST_CASE("partition invariant") {
    CHECK(partition_invariant(build_mk1k(2, 3, TwistChoice::A, TwistChoice::B)) == PartitionInvariant{2, 3});
    CHECK(partition_invariant(build_mk1k(0, 1, TwistChoice::A, TwistChoice::A)) == PartitionInvariant{0, 1});
    auto g = build_graph_gm(build_mk1k(1, 2, TwistChoice::A, TwistChoice::A));
    auto d = g.degrees();
    CHECK(d[0] == 4);
    for (size_t v = 1; v < d.size(); ++v) CHECK(d[v] == 2);
    CHECK_THROWS_AS(partition_invariant(build_mkk(2, Twist::Left)), MalformedGraph);
}

TEST_CASE("edge identification graph") {
    CHECK(edge_identification_check(Parity::Even, Parity::Even) == Connectivity::Disconnected);
    CHECK(edge_identification_check(Parity::Odd, Parity::Even) == Connectivity::Connected);
    CHECK(edge_identification_check(Parity::Even, Parity::Odd) == Connectivity::Connected);
    CHECK(edge_identification_check(Parity::Odd, Parity::Odd) == Connectivity::Connected);
}

TEST_CASE("brute force on small cases") {
    auto a = brute_force_census(Family::Mkk, 2);
    CHECK(a.count == 1);
    CHECK(a.classes[0].canonical_hash == canonical_hash(build_mkk(2, Twist::Left)));
    CHECK(brute_force_census(Family::Mkk, 1).count == 0);
    CHECK(brute_force_census(Family::Mkk, 3).count == 0);
    CHECK(brute_force_census(Family::Mk1k, 1).count == 1);
    auto b = brute_force_census(Family::Mk1k, 3);
    CHECK(b.count == 2);
    auto c = brute_force_census(Family::Mk1k, 4);
    CHECK(c.count == 1);
    CHECK(c.classes[0].canonical_hash == enumerate_family(Family::Mk1k, 4)[0].canonical_hash);
    for (int k = 1; k <= 3; ++k) {
        std::set<std::string> fam;
        for (const auto& m : enumerate_family(Family::Mk1k, k)) fam.insert(m.canonical_hash);
        std::set<std::string> bf;
        for (const auto& m : brute_force_census(Family::Mk1k, k).classes) bf.insert(m.canonical_hash);
        CHECK(fam == bf);
    }
    CHECK_THROWS_AS(brute_force_census(Family::Mk1k, 5), SearchBudgetExceeded);
    CHECK(brute_force_estimate(Family::Mk1k, 4) < 1e8);
}
