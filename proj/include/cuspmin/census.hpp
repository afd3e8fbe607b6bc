#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspmin/triangulation.hpp"

namespace cuspmin {

// A combinatorial isomorphism: tetrahedron X goes to tet_map[X] with vertex
// bijection vertex_map[X].
struct CombIso {
    std::vector<int> tet_map;
    std::vector<Perm4> vertex_map;
    int orientation_character = 1;

    CombIso compose(const CombIso& first) const;  // this after first
    CombIso inverse() const;
    bool is_identity() const;
    bool operator==(const CombIso& o) const { return tet_map == o.tet_map && vertex_map == o.vertex_map; }
};

// Checks that iso carries every gluing of t1 onto a gluing of t2.
bool is_valid_iso(const Triangulation& t1, const Triangulation& t2, const CombIso& iso);

// Extends the seed "tet 0 of t1 goes to tet y of t2 via q" through the gluings.
std::optional<CombIso> propagate_iso(const Triangulation& t1, const Triangulation& t2, int y, Perm4 q);

std::optional<CombIso> is_isomorphic(const Triangulation& t1, const Triangulation& t2);

struct DihedralCertificate {
    int r = -1;  // indices into AutGroup::elements
    int t = -1;
    int rotation_order = 0;
    bool verified = false;
};

struct AutGroup {
    std::vector<CombIso> elements;
    int order() const { return int(elements.size()); }
    int orientation_preserving_order() const;
    std::optional<DihedralCertificate> dihedral;
};

AutGroup automorphism_group(const Triangulation& t);
int element_order(const CombIso& g);

// Minimal breadth-first relabeling transcript over all admissible seeds.
std::vector<int> canonical_form(const Triangulation& t);
std::string canonical_hash(const Triangulation& t);

struct PartitionInvariant {
    int i = 0;
    int j = 0;
    bool operator==(const PartitionInvariant&) const = default;
    auto operator<=>(const PartitionInvariant&) const = default;
};

// Vertex 0 stands for the compact tetrahedron; vertices 1..k for the cusps.
struct GraphGM {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degrees() const;
};

GraphGM build_graph_gm(const Triangulation& t);
PartitionInvariant partition_invariant(const Triangulation& t);

enum class Family { Mkk, Mk1k };
std::string family_name(Family f);
Family parse_family(const std::string& s);

struct FamilyMember {
    Triangulation tri;
    std::optional<PartitionInvariant> invariant;
    std::string canonical_hash;
    std::string construction;  // how the representative was built
};

std::vector<FamilyMember> enumerate_family(Family family, int k);

struct BruteForceResult {
    int count = 0;
    std::vector<FamilyMember> classes;  // sorted by canonical hash
    std::uint64_t candidates = 0;       // leaves visited
    std::uint64_t valid = 0;            // leaves passing validation
    double estimate = 0;                // pre-search upper bound on leaves
};

double brute_force_estimate(Family family, int k);
BruteForceResult brute_force_census(Family family, int k, double budget = 1e8);

enum class Parity { Odd, Even };
enum class Connectivity { Connected, Disconnected };
Connectivity edge_identification_check(Parity first, Parity second);

}  // namespace cuspmin
