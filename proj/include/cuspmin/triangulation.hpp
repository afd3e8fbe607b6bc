#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspmin/perm4.hpp"

namespace cuspmin {

enum class TetKind { NonCompact, Compact };

// Face f of a tetrahedron is the face opposite vertex f. A non-compact
// tetrahedron always has its ideal vertex at 3, so face 3 is its finite face.
struct Tetra {
    int id = 0;
    TetKind kind = TetKind::NonCompact;
    std::optional<int> ideal_vertex;
    int orientation = 1;
};

struct FaceSlot {
    int tet = -1;
    int face = -1;
    auto operator<=>(const FaceSlot&) const = default;
};

// map sends the vertices of tet a to those of tet b, with map[face_a] == face_b.
struct FaceGluing {
    FaceSlot a;
    FaceSlot b;
    Perm4 map;
};

struct Meta {
    int g = 0;
    int k = 0;
    bool operator==(const Meta&) const = default;
};

class Triangulation {
public:
    struct Adj {
        int tet = -1;
        int face = -1;
        Perm4 perm;
        bool glued() const { return tet >= 0; }
    };

    int add_tet(TetKind kind);
    // Glues face fa of ta to face fb of tb; p must send fa to fb.
    void glue(int ta, int fa, int tb, int fb, Perm4 p);
    void unglue(int t, int f);

    int size() const { return int(tetra_.size()); }
    const std::vector<Tetra>& tetra() const { return tetra_; }
    const Tetra& tet(int t) const { return tetra_.at(t); }
    const Adj& adj(int t, int f) const { return adj_.at(t)[f]; }
    bool is_glued(int t, int f) const { return adj_.at(t)[f].glued(); }

    // One entry per glued face pair, with the smaller slot as side a.
    std::vector<FaceGluing> gluings() const;
    int glued_slot_count() const;

    // Orientation signs by propagation from the lowest tetrahedron of each
    // component (which gets +1). Empty if some gluing preserves orientation.
    std::optional<std::vector<int>> orientation_signs() const;
    // Stores the propagated signs on the tetra; returns false if inconsistent.
    bool orient();
    bool connected() const;

    // Moves tetrahedron t's vertex v to position p(v); gluings follow.
    void relabel_tet(int t, Perm4 p);

    std::optional<Meta> meta;
    // Optional per-(tet, edge) construction labels (a, b, c, p, q, r, E1..E6).
    std::vector<std::array<std::string, 6>> edge_labels;

private:
    std::vector<Tetra> tetra_;
    std::vector<std::array<Adj, 4>> adj_;
};

// Copies src's tetrahedra and gluings into dst; returns the index offset.
int append_triangulation(Triangulation& dst, const Triangulation& src);

struct EdgeClass {
    std::vector<std::pair<int, int>> slots;  // (tet, edge index), sorted
    bool compact = true;
    int incidence = 0;
    std::string label;
};

struct EdgeClassTable {
    std::vector<EdgeClass> classes;  // ordered by lowest slot
    std::vector<std::array<int, 6>> class_of;

    int compact_count() const;
    std::vector<int> compact_incidences() const;
    std::vector<int> cusp_incidences() const;
};

EdgeClassTable compute_edge_classes(const Triangulation& t);

struct VertexClass {
    std::vector<std::pair<int, int>> slots;  // (tet, vertex)
    bool ideal = false;
    int link_euler = 0;
};

std::vector<VertexClass> compute_vertex_classes(const Triangulation& t);

// True if some edge is identified with itself with reversed direction.
bool has_reversed_edge(const Triangulation& t);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass() const;
    std::string summary() const;
};

ValidationReport validate_minimal(const Triangulation& t, int g, int k);

// ---- constructions -------------------------------------------------------

// Tetra 0 .. 2l-1; the unglued finite faces are face 3 of tetra 0 and 2l-1.
struct ChainComplex {
    Triangulation tri;
    int length = 0;
    int first_tet() const { return 0; }
    int last_tet() const { return 2 * length - 1; }
};

ChainComplex build_chain(int length);

// The three gluings pairing the cusp faces of tetra a and b around their
// shared ideal vertex (a torus link and a single non-compact edge).
void glue_cusp_pair(Triangulation& t, int a, int b);

// Labels of the three finite-face edges read around the boundary face of
// tetra t in the direction induced by its orientation.
std::array<std::string, 3> boundary_label_cycle(const Triangulation& tri, int t);
bool same_cyclic_order(const std::array<std::string, 3>& x, const std::array<std::string, 3>& y);
bool chain_label_order_agrees(const ChainComplex& c);

enum class Twist { Left, Right, Identity };

Triangulation close_chain(const ChainComplex& chain, Twist twist);
// Closes the chain with an arbitrary gluing of the end faces; no checks.
Triangulation glue_chain_ends(const ChainComplex& chain, Perm4 p);
// The unique member construction for an even number of cusps.
Triangulation build_mkk(int k, Twist twist);

enum class TwistChoice { A, B };

// Compact tetrahedron (tet 0) with a chain of length i across faces 0,1 and
// one of length j across faces 2,3.
Triangulation build_mk1k(int i, int j, TwistChoice t1, TwistChoice t2);

// Edge index in the compact tetrahedron of the edge named E<label>, label 1..6.
int compact_edge_index(int label);

// ---- serialization -------------------------------------------------------

std::string to_json(const Triangulation& t);
Triangulation triangulation_from_json(const std::string& s);

}  // namespace cuspmin
