#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cuspmin/triangulation.hpp"

namespace cuspmin {

enum class FaceTag { BigFace, Hexagonal, Other };

// One traversal of a spine edge inside a face boundary.
struct Occurrence {
    int edge = -1;
    bool forward = true;
    bool operator==(const Occurrence&) const = default;
};

struct SpineVertex {
    std::string label;
    int tet = -1;  // dual tetrahedron, if any
    bool alive = true;
    bool operator==(const SpineVertex&) const = default;
};

struct SpineEdge {
    int tail = -1;
    int head = -1;
    std::string label;
    bool alive = true;
    bool operator==(const SpineEdge&) const = default;
};

struct SpineFace {
    std::vector<Occurrence> word;
    // Diamond label at the corner before each occurrence; cleared once a
    // surgery step rewrites the face.
    std::vector<std::string> diamonds;
    FaceTag tag = FaceTag::Other;
    int cusp = -1;
    std::string label;
    bool alive = true;
    bool operator==(const SpineFace&) const = default;
};

struct SpineOp {
    enum Kind { SubdivideEdge, SplitFace, AddFace, RemoveFace, DeleteEdge, DeleteVertex };
    Kind kind = SubdivideEdge;
    int a = -1;  // edge, face or vertex operated on
    int b = -1;  // corner indices for SplitFace
    int c = -1;
    std::vector<Occurrence> word;  // AddFace
    std::string label;
    bool operator==(const SpineOp&) const = default;
};

struct SpineComplex {
    std::vector<SpineVertex> vertices;
    std::vector<SpineEdge> edges;
    std::vector<SpineFace> faces;

    int vertex_count() const;
    int edge_count() const;
    int face_count() const;
    int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

    int start(Occurrence o) const { return o.forward ? edges[o.edge].tail : edges[o.edge].head; }
    int end(Occurrence o) const { return o.forward ? edges[o.edge].head : edges[o.edge].tail; }
    // Number of times each live edge appears in live face boundaries.
    std::vector<int> valence() const;

    // Primitive cellular moves. Each returns the id of the cell it creates
    // (new vertex, new chord edge, new face, merged face, new edge).
    int subdivide_edge(int e, const std::string& label = "");
    // Cuts face f along a new edge from the corner before word[i] to the
    // corner before word[j] (i < j). The face is replaced by two new faces,
    // the one holding word[i..j-1] first.
    int split_face(int f, int i, int j, const std::string& label = "");
    int add_face(std::vector<Occurrence> word, const std::string& label = "");
    void remove_face(int f);
    // Removes an edge lying on exactly two distinct faces, merging them.
    int delete_edge(int e);
    // Removes a vertex with exactly two incident edge ends, joining the edges.
    int delete_vertex(int v, const std::string& label = "");

    int apply(const SpineOp& op);

    bool operator==(const SpineComplex&) const = default;
};

// The dual 2-complex: one vertex per tetrahedron, one edge per glued face
// pair, one face per edge class.
SpineComplex dualize(const Triangulation& t);

struct BigFaceWord {
    std::vector<int> vertices;           // spine vertex ids along the face
    std::vector<std::string> diamonds;
    std::vector<std::string> canonical;  // minimal rotation over both directions
};

BigFaceWord big_face_word(const SpineComplex& s);

// Rebuilds the triangulation dual to a special spine. Vertices whose link is
// a torus become ideal and are moved to position 3.
Triangulation redualize(const SpineComplex& s);

std::string spine_to_json(const SpineComplex& s);

// ---- Dehn filling --------------------------------------------------------

struct Slope {
    int p = 0;
    int q = 1;
    bool operator==(const Slope&) const = default;
};

// Integer 2x2 matrix acting on (p, q) column vectors.
using Basis = std::array<int, 4>;

// Slope conventions: the theorem's list of six slopes, or the model slope used
// in the proof's worked example.
enum class SlopeConvention { Theorem, Proof };

struct SlopeCurve {
    Slope slope;
    std::array<int, 2> cls{};     // class in hexagon coordinates
    std::array<int, 3> normal{};  // points on the three hexagon edges
    std::vector<std::array<int, 2>> arcs;  // boundary point pairs
};

struct SurgeryTranscript {
    std::vector<SpineOp> ops;
    int cusp = -1;
    int intersection_points = 0;
    std::vector<int> complementary_faces;  // J faces, J1 first
    int removed_face = -1;
    int disk_face = -1;
    int merged_face = -1;                  // G'
    std::vector<int> deleted_edges;
    std::vector<int> deleted_vertices;
    std::vector<int> new_edges;            // edges formed by joining at deleted vertices
    int candidates_tried = 0;
    int candidates_valid = 0;
    int final_vertices = 0, final_edges = 0, final_faces = 0;
};

struct FillResult {
    Triangulation tri;
    SpineComplex spine;  // after surgery
    SurgeryTranscript transcript;
    SlopeCurve curve;
};

const std::vector<Slope>& theorem_slopes();
Slope model_slope();

// Frozen calibration: maps a slope in each convention to hexagon coordinates.
Basis slope_basis(SlopeConvention c);

FillResult dehn_fill(const Triangulation& t, int cusp, Slope slope,
                     SlopeConvention convention = SlopeConvention::Theorem);
// Same, with the slope already in hexagon coordinates; no support check.
FillResult dehn_fill_class(const Triangulation& t, int cusp, std::array<int, 2> cls, Slope label);

SpineComplex replay(const SpineComplex& start, const SurgeryTranscript& tr);

struct SlopeCalibration {
    Basis proof;    // model slope convention
    Basis theorem;  // theorem slope convention
    Basis change;   // proof^-1 * theorem
    int proof_candidates = 0;
    int theorem_candidates = 0;
};

// Searches small unimodular matrices: the proof basis must send the model
// slope to the curve drawn in the proof, the theorem basis must send all six
// theorem slopes to fillings isomorphic to the trivial-partition member.
SlopeCalibration calibrate_slopes(int k = 2);

}  // namespace cuspmin
