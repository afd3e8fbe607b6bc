#include "cuspmin/spine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <set>

#include <json.hpp>

#include "cuspmin/census.hpp"
#include "cuspmin/errors.hpp"

namespace cuspmin {

// ---- cell bookkeeping ------------------------------------------------------

int SpineComplex::vertex_count() const {
    return int(std::count_if(vertices.begin(), vertices.end(), [](const auto& v) { return v.alive; }));
}
int SpineComplex::edge_count() const {
    return int(std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.alive; }));
}
int SpineComplex::face_count() const {
    return int(std::count_if(faces.begin(), faces.end(), [](const auto& f) { return f.alive; }));
}

std::vector<int> SpineComplex::valence() const {
    std::vector<int> v(edges.size(), 0);
    for (const auto& f : faces)
        if (f.alive)
            for (auto o : f.word) ++v[o.edge];
    return v;
}

namespace {

Occurrence flip(Occurrence o) { return {o.edge, !o.forward}; }

std::vector<Occurrence> reversed(const std::vector<Occurrence>& w) {
    std::vector<Occurrence> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(flip(*it));
    return r;
}

}  // namespace

int SpineComplex::subdivide_edge(int e, const std::string& label) {
    if (e < 0 || e >= int(edges.size()) || !edges[e].alive) throw SurgeryError("subdivide: no such edge");
    int x = int(vertices.size());
    vertices.push_back({label, -1, true});
    SpineEdge old = edges[e];
    edges[e].alive = false;
    int e1 = int(edges.size());
    edges.push_back({old.tail, x, old.label.empty() ? "" : old.label + "'", true});
    int e2 = int(edges.size());
    edges.push_back({x, old.head, old.label.empty() ? "" : old.label + "''", true});
    for (auto& f : faces) {
        if (!f.alive) continue;
        std::vector<Occurrence> w;
        bool touched = false;
        for (auto o : f.word) {
            if (o.edge != e) {
                w.push_back(o);
                continue;
            }
            touched = true;
            if (o.forward) {
                w.push_back({e1, true});
                w.push_back({e2, true});
            } else {
                w.push_back({e2, false});
                w.push_back({e1, false});
            }
        }
        if (touched) {
            f.word = std::move(w);
            f.diamonds.clear();
        }
    }
    return x;
}

int SpineComplex::split_face(int f, int i, int j, const std::string& label) {
    if (f < 0 || f >= int(faces.size()) || !faces[f].alive) throw SurgeryError("split: no such face");
    SpineFace old = faces[f];
    int n = int(old.word.size());
    if (!(0 <= i && i < j && j < n)) throw SurgeryError("split: bad corners");
    int d = int(edges.size());
    edges.push_back({start(old.word[i]), start(old.word[j]), label, true});
    faces[f].alive = false;
    SpineFace a, b;
    a.word.assign(old.word.begin() + i, old.word.begin() + j);
    a.word.push_back({d, false});
    b.word.assign(old.word.begin() + j, old.word.end());
    b.word.insert(b.word.end(), old.word.begin(), old.word.begin() + i);
    b.word.push_back({d, true});
    a.tag = b.tag = FaceTag::Other;
    a.cusp = b.cusp = old.cusp;
    faces.push_back(std::move(a));
    faces.push_back(std::move(b));
    return d;
}

int SpineComplex::add_face(std::vector<Occurrence> word, const std::string& label) {
    for (size_t t = 0; t < word.size(); ++t) {
        const auto& o = word[t];
        if (o.edge < 0 || o.edge >= int(edges.size()) || !edges[o.edge].alive)
            throw SurgeryError("add_face: dead edge in word");
        if (end(o) != start(word[(t + 1) % word.size()])) throw SurgeryError("add_face: word is not a closed path");
    }
    SpineFace f;
    f.word = std::move(word);
    f.label = label;
    faces.push_back(std::move(f));
    return int(faces.size()) - 1;
}

void SpineComplex::remove_face(int f) {
    if (f < 0 || f >= int(faces.size()) || !faces[f].alive) throw SurgeryError("remove_face: no such face");
    faces[f].alive = false;
}

int SpineComplex::delete_edge(int e) {
    std::vector<std::pair<int, int>> occ;
    for (int f = 0; f < int(faces.size()); ++f) {
        if (!faces[f].alive) continue;
        for (int t = 0; t < int(faces[f].word.size()); ++t)
            if (faces[f].word[t].edge == e) occ.push_back({f, t});
    }
    if (occ.size() != 2 || occ[0].first == occ[1].first)
        throw SurgeryError("delete_edge: edge " + std::to_string(e) + " does not separate two faces");
    auto [f1, t1] = occ[0];
    auto [f2, t2] = occ[1];
    auto w1 = faces[f1].word;
    auto w2 = faces[f2].word;
    if (w1[t1].forward == w2[t2].forward) {
        w2 = reversed(w2);
        t2 = int(w2.size()) - 1 - t2;
    }
    std::vector<Occurrence> merged;
    for (size_t s = 1; s < w1.size(); ++s) merged.push_back(w1[(t1 + s) % w1.size()]);
    for (size_t s = 1; s < w2.size(); ++s) merged.push_back(w2[(t2 + s) % w2.size()]);
    bool big = faces[f1].tag == FaceTag::BigFace || faces[f2].tag == FaceTag::BigFace;
    faces[f1].word = std::move(merged);
    faces[f1].diamonds.clear();
    if (big) {
        faces[f1].tag = FaceTag::BigFace;
        faces[f1].label = "G'";
        faces[f1].cusp = -1;
    }
    faces[f2].alive = false;
    edges[e].alive = false;
    return f1;
}

int SpineComplex::delete_vertex(int v, const std::string& label) {
    std::vector<std::pair<int, int>> ends;  // (edge, 0 tail / 1 head)
    for (int e = 0; e < int(edges.size()); ++e) {
        if (!edges[e].alive) continue;
        if (edges[e].tail == v) ends.push_back({e, 0});
        if (edges[e].head == v) ends.push_back({e, 1});
    }
    if (ends.size() != 2 || ends[0].first == ends[1].first)
        throw SurgeryError("delete_vertex: vertex " + std::to_string(v) + " is not an interior point of two edges");
    auto other = [&](std::pair<int, int> h) { return h.second == 0 ? edges[h.first].head : edges[h.first].tail; };
    int e = ends[0].first, f = ends[1].first;
    int g = int(edges.size());
    edges.push_back({other(ends[0]), other(ends[1]), label, true});
    // traversing e into v then f out of v is g forward
    auto into_v = [&](Occurrence o) { return end(o) == v; };
    for (auto& face : faces) {
        if (!face.alive) continue;
        auto& w = face.word;
        bool has = std::any_of(w.begin(), w.end(), [&](Occurrence o) { return o.edge == e || o.edge == f; });
        if (!has) continue;
        // rotate so no e/f pair straddles the seam
        size_t n = w.size(), s = 0;
        while (s < n && (w[s].edge == e || w[s].edge == f) && into_v(w[(s + n - 1) % n]) &&
               (w[(s + n - 1) % n].edge == e || w[(s + n - 1) % n].edge == f))
            ++s;
        std::rotate(w.begin(), w.begin() + s, w.end());
        std::vector<Occurrence> out;
        for (size_t t = 0; t < n; ++t) {
            Occurrence o = w[t];
            if (o.edge != e && o.edge != f) {
                out.push_back(o);
                continue;
            }
            if (t + 1 >= n || !into_v(o)) throw SurgeryError("delete_vertex: face passes through vertex badly");
            Occurrence o2 = w[t + 1];
            if (o2.edge == o.edge || (o2.edge != e && o2.edge != f)) throw SurgeryError("delete_vertex: bad turn");
            out.push_back({g, o.edge == e});
            ++t;
        }
        w = std::move(out);
        face.diamonds.clear();
    }
    edges[e].alive = edges[f].alive = false;
    vertices[v].alive = false;
    return g;
}

int SpineComplex::apply(const SpineOp& op) {
    switch (op.kind) {
        case SpineOp::SubdivideEdge: return subdivide_edge(op.a, op.label);
        case SpineOp::SplitFace: return split_face(op.a, op.b, op.c, op.label);
        case SpineOp::AddFace: return add_face(op.word, op.label);
        case SpineOp::RemoveFace: remove_face(op.a); return op.a;
        case SpineOp::DeleteEdge: return delete_edge(op.a);
        case SpineOp::DeleteVertex: return delete_vertex(op.a, op.label);
    }
    throw SurgeryError("unknown spine operation");
}

// ---- duality -------------------------------------------------------------

namespace {

std::string diamond_label(const Triangulation& t, int tet, int e) {
    if (tet < int(t.edge_labels.size()) && !t.edge_labels[tet][e].empty()) {
        std::string l = t.edge_labels[tet][e];
        if (l[0] == 'E') return l;
        std::string u;
        for (char ch : l) u += char(std::toupper(static_cast<unsigned char>(ch)));
        return u + std::to_string(tet + 1);
    }
    return "d" + std::to_string(tet + 1) + "." + std::to_string(e);
}

std::array<int, 2> other_two(int a, int b) {
    std::array<int, 2> r{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) r[n++] = v;
    return r;
}

}  // namespace

SpineComplex dualize(const Triangulation& t) {
    SpineComplex s;
    int n = t.size();
    for (int x = 0; x < n; ++x) s.vertices.push_back({"v" + std::to_string(x + 1), x, true});
    std::vector<std::array<std::pair<int, int>, 4>> slot(n);  // (edge, end) per face
    for (auto& row : slot) row.fill({-1, -1});
    for (const auto& g : t.gluings()) {
        int id = int(s.edges.size());
        s.edges.push_back({g.a.tet, g.b.tet, "", true});
        slot[g.a.tet][g.a.face] = {id, 0};
        slot[g.b.tet][g.b.face] = {id, 1};
    }
    auto ec = compute_edge_classes(t);
    int cusp = 0;
    for (const auto& cls : ec.classes) {
        SpineFace f;
        f.tag = cls.compact ? FaceTag::BigFace : FaceTag::Hexagonal;
        if (!cls.compact) f.cusp = cusp++;
        f.label = cls.compact ? "G" : "H" + std::to_string(f.cusp + 1);
        auto [x0, e0] = cls.slots.front();
        auto v0 = edge_vertices(e0);
        auto fc = other_two(v0[0], v0[1]);
        int x = x0, u = v0[0], w = v0[1], entry = fc[1], exit = fc[0];
        for (int steps = 0;; ++steps) {
            if (steps > 6 * n) throw SurgeryError("dualize: edge walk does not close");
            auto [edge, endpoint] = slot[x][exit];
            if (edge < 0) throw ValidationError("NotClosed", "dualize needs every face glued");
            f.diamonds.push_back(diamond_label(t, x, edge_index(u, w)));
            f.word.push_back({edge, endpoint == 0});
            const auto& a = t.adj(x, exit);
            u = a.perm[u];
            w = a.perm[w];
            entry = a.face;
            x = a.tet;
            auto nf = other_two(u, w);
            exit = nf[0] == entry ? nf[1] : nf[0];
            if (x == x0 && edge_index(u, w) == e0 && entry == fc[1]) break;
        }
        s.faces.push_back(std::move(f));
    }
    for (auto& e : s.edges) e.label = "e";
    for (const auto& f : s.faces) {
        if (f.tag != FaceTag::Hexagonal) continue;
        std::set<int> es;
        for (auto o : f.word) es.insert(o.edge);
        int j = 1;
        for (int e : es) s.edges[e].label = "e^" + std::to_string(f.cusp + 1) + "_" + std::to_string(j++);
    }
    for (auto& e : s.edges)
        if (e.label == "e") e.label = "e^{" + std::to_string(e.tail + 1) + "," + std::to_string(e.head + 1) + "}";
    return s;
}

namespace {

// (letters, number) so that A2 sorts before A10.
std::pair<std::string, long> token_key(const std::string& s) {
    size_t i = 0;
    while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    long num = -1;
    if (i < s.size()) {
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == s.size()) num = std::stol(s.substr(i));
        else return {s, -1};
    }
    return {s.substr(0, i), num};
}

}  // namespace

BigFaceWord big_face_word(const SpineComplex& s) {
    const SpineFace* g = nullptr;
    for (const auto& f : s.faces)
        if (f.alive && f.tag == FaceTag::BigFace) g = &f;
    if (!g) throw NoBigFace("the spine has no big face");
    BigFaceWord out;
    for (auto o : g->word) out.vertices.push_back(s.start(o));
    out.diamonds = g->diamonds;
    if (out.diamonds.empty())
        for (int v : out.vertices) out.diamonds.push_back(s.vertices[v].label);
    int n = int(out.diamonds.size());
    std::vector<std::pair<std::string, long>> keys;
    for (const auto& d : out.diamonds) keys.push_back(token_key(d));
    std::vector<std::pair<std::string, long>> best;
    std::vector<std::string> best_words;
    for (int dir = 0; dir < 2; ++dir)
        for (int r = 0; r < n; ++r) {
            std::vector<std::pair<std::string, long>> k;
            std::vector<std::string> w;
            for (int i = 0; i < n; ++i) {
                int idx = dir == 0 ? (r + i) % n : ((r - i) % n + n) % n;
                k.push_back(keys[idx]);
                w.push_back(out.diamonds[idx]);
            }
            if (best.empty() || k < best) {
                best = k;
                best_words = w;
            }
        }
    out.canonical = best_words;
    return out;
}

Triangulation redualize(const SpineComplex& s) {
    std::vector<int> tet_of(s.vertices.size(), -1);
    int n = 0;
    for (size_t v = 0; v < s.vertices.size(); ++v)
        if (s.vertices[v].alive) tet_of[v] = n++;
    // half-edge (edge, end) -> local face index at its vertex
    std::map<std::pair<int, int>, int> local;
    std::vector<int> degree(s.vertices.size(), 0);
    for (int e = 0; e < int(s.edges.size()); ++e) {
        if (!s.edges[e].alive) continue;
        local[{e, 0}] = degree[s.edges[e].tail]++;
        local[{e, 1}] = degree[s.edges[e].head]++;
    }
    for (size_t v = 0; v < s.vertices.size(); ++v)
        if (s.vertices[v].alive && degree[v] != 4)
            throw SurgeryError("redualize: vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
    auto start_half = [](Occurrence o) { return std::pair<int, int>{o.edge, o.forward ? 0 : 1}; };
    auto end_half = [](Occurrence o) { return std::pair<int, int>{o.edge, o.forward ? 1 : 0}; };

    std::vector<std::set<std::pair<int, int>>> corners(s.vertices.size());
    // per edge: list of (local index beside tail end, local index beside head end)
    std::vector<std::vector<std::pair<int, int>>> sheets(s.edges.size());
    for (const auto& f : s.faces) {
        if (!f.alive) continue;
        int m = int(f.word.size());
        for (int t = 0; t < m; ++t) {
            Occurrence prev = f.word[(t + m - 1) % m], cur = f.word[t], next = f.word[(t + 1) % m];
            int v = s.start(cur);
            int a = local.at(end_half(prev)), b = local.at(start_half(cur));
            if (a == b) throw SurgeryError("redualize: face turns back on itself");
            if (!corners[v].insert({std::min(a, b), std::max(a, b)}).second)
                throw SurgeryError("redualize: repeated corner at vertex " + std::to_string(v));
            int before = local.at(end_half(prev));   // beside the start end of cur
            int after = local.at(start_half(next));  // beside the end end of cur
            if (cur.forward) sheets[cur.edge].push_back({before, after});
            else sheets[cur.edge].push_back({after, before});
        }
    }
    for (size_t v = 0; v < s.vertices.size(); ++v)
        if (s.vertices[v].alive && corners[v].size() != 6)
            throw SurgeryError("redualize: vertex " + std::to_string(v) + " is not a special vertex");

    struct G {
        int ta, fa, tb, fb;
        Perm4 p;
    };
    std::vector<G> glues;
    for (int e = 0; e < int(s.edges.size()); ++e) {
        if (!s.edges[e].alive) continue;
        if (sheets[e].size() != 3) throw SurgeryError("redualize: edge " + std::to_string(e) + " is not triple");
        int fa = local.at({e, 0}), fb = local.at({e, 1});
        std::array<int, 4> img{-1, -1, -1, -1};
        img[fa] = fb;
        for (auto [g1, g2] : sheets[e]) {
            if (img[g1] != -1) throw SurgeryError("redualize: inconsistent sheets");
            img[g1] = g2;
        }
        Perm4 p(img[0], img[1], img[2], img[3]);
        if (!p.valid()) throw SurgeryError("redualize: sheets do not give a bijection");
        glues.push_back({tet_of[s.edges[e].tail], fa, tet_of[s.edges[e].head], fb, p});
    }

    Triangulation raw;
    for (int x = 0; x < n; ++x) raw.add_tet(TetKind::Compact);
    for (const auto& g : glues) raw.glue(g.ta, g.fa, g.tb, g.fb, g.p);
    std::vector<int> ideal(n, -1);
    for (const auto& vc : compute_vertex_classes(raw)) {
        if (vc.link_euler != 0) continue;
        for (auto [x, v] : vc.slots) {
            if (ideal[x] != -1) throw SurgeryError("redualize: tetrahedron with two ideal vertices");
            ideal[x] = v;
        }
    }
    std::vector<Perm4> relabel(n);
    Triangulation t;
    for (int x = 0; x < n; ++x) {
        if (ideal[x] >= 0) relabel[x] = Perm4::transposition(ideal[x], 3);
        t.add_tet(ideal[x] >= 0 ? TetKind::NonCompact : TetKind::Compact);
    }
    for (const auto& g : glues)
        t.glue(g.ta, relabel[g.ta][g.fa], g.tb, relabel[g.tb][g.fb], relabel[g.tb] * g.p * relabel[g.ta].inverse());
    if (!t.orient()) throw SurgeryError("redualize: result is not orientable");
    return t;
}

std::string spine_to_json(const SpineComplex& s) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json vs = ordered_json::array(), es = ordered_json::array(), fs = ordered_json::array();
    for (size_t v = 0; v < s.vertices.size(); ++v) {
        if (!s.vertices[v].alive) continue;
        ordered_json o;
        o["id"] = v;
        o["label"] = s.vertices[v].label;
        o["tet"] = s.vertices[v].tet >= 0 ? ordered_json(s.vertices[v].tet) : ordered_json(nullptr);
        vs.push_back(o);
    }
    for (size_t e = 0; e < s.edges.size(); ++e) {
        if (!s.edges[e].alive) continue;
        ordered_json o;
        o["id"] = e;
        o["tail"] = s.edges[e].tail;
        o["head"] = s.edges[e].head;
        o["label"] = s.edges[e].label;
        es.push_back(o);
    }
    for (size_t f = 0; f < s.faces.size(); ++f) {
        const auto& F = s.faces[f];
        if (!F.alive) continue;
        ordered_json o;
        o["id"] = f;
        o["label"] = F.label;
        o["tag"] = F.tag == FaceTag::BigFace ? "big" : F.tag == FaceTag::Hexagonal ? "hexagonal" : "other";
        o["cusp"] = F.cusp >= 0 ? ordered_json(F.cusp) : ordered_json(nullptr);
        ordered_json w = ordered_json::array();
        for (auto oc : F.word) w.push_back(oc.forward ? oc.edge + 1 : -(oc.edge + 1));
        o["word"] = w;
        o["diamonds"] = F.diamonds;
        fs.push_back(o);
    }
    j["vertices"] = vs;
    j["edges"] = es;
    j["faces"] = fs;
    j["euler"] = s.euler_characteristic();
    return j.dump(2) + "\n";
}

// ---- Dehn filling --------------------------------------------------------

const std::vector<Slope>& theorem_slopes() {
    static const std::vector<Slope> s = {{-2, 1}, {-1, 2}, {1, 3}, {2, 3}, {3, 2}, {3, 1}};
    return s;
}

Slope model_slope() { return {1, 2}; }

Basis slope_basis(SlopeConvention c) {
    // Frozen output of calibrate_slopes (checked by the tests).
    if (c == SlopeConvention::Theorem) return {1, 0, 0, 1};
    return {1, 0, 0, -1};
}

namespace {

std::array<int, 2> apply_basis(const Basis& b, Slope s) { return {b[0] * s.p + b[1] * s.q, b[2] * s.p + b[3] * s.q}; }

bool same_class(std::array<int, 2> a, std::array<int, 2> b) {
    return a == b || (a[0] == -b[0] && a[1] == -b[1]);
}

struct Hexagon {
    int face = -1;
    std::array<int, 3> edge{};  // ascending ids
    std::array<int, 3> sign{};  // +1 if the edge runs from the common tail vertex
    std::array<int, 2> ends{};
};

Hexagon find_hexagon(const SpineComplex& s, int cusp) {
    Hexagon h;
    for (int f = 0; f < int(s.faces.size()); ++f)
        if (s.faces[f].alive && s.faces[f].tag == FaceTag::Hexagonal && s.faces[f].cusp == cusp) h.face = f;
    if (h.face < 0) throw ValidationError("NoSuchCusp", "no hexagonal face for cusp " + std::to_string(cusp));
    const auto& w = s.faces[h.face].word;
    std::map<int, std::vector<bool>> dirs;
    for (auto o : w) dirs[o.edge].push_back(o.forward);
    if (w.size() != 6 || dirs.size() != 3) throw NormalPositionError("hexagonal face is not a hexagon on three edges");
    int j = 0;
    for (const auto& [e, d] : dirs) {
        if (d.size() != 2 || d[0] == d[1]) throw NormalPositionError("hexagon edge not paired with opposite sides");
        h.edge[j++] = e;
    }
    h.ends = {s.edges[h.edge[0]].tail, s.edges[h.edge[0]].head};
    if (h.ends[0] == h.ends[1]) throw NormalPositionError("hexagon edge is a loop");
    for (int i = 0; i < 3; ++i) {
        const auto& E = s.edges[h.edge[i]];
        if (E.tail == h.ends[0] && E.head == h.ends[1]) h.sign[i] = 1;
        else if (E.tail == h.ends[1] && E.head == h.ends[0]) h.sign[i] = -1;
        else throw NormalPositionError("hexagon edges do not share their endpoints");
    }
    return h;
}

struct CurveLayout {
    std::array<int, 3> normal{};
    std::vector<std::pair<int, int>> points;  // boundary point -> (side, index along edge)
    std::vector<std::array<int, 2>> arcs;     // in curve order, (from, to)
    std::array<int, 2> cls{};
};

int hex_slot(const Hexagon& h, int edge) {
    for (int i = 0; i < 3; ++i)
        if (h.edge[i] == edge) return i;
    return -1;
}

using Matching = std::vector<std::pair<int, int>>;

// Non-crossing perfect matchings of boundary points l..r-1 that never join
// two points of the same side.
std::vector<Matching> noncrossing(const std::vector<std::pair<int, int>>& pts, int l, int r) {
    if (l >= r) return {Matching{}};
    std::vector<Matching> out;
    for (int b = l + 1; b < r; b += 2) {
        if (pts[l].first == pts[b].first) continue;
        auto ins = noncrossing(pts, l + 1, b);
        auto outs = noncrossing(pts, b + 1, r);
        for (const auto& x : ins)
            for (const auto& y : outs) {
                Matching m = x;
                m.insert(m.end(), y.begin(), y.end());
                m.push_back({l, b});
                out.push_back(std::move(m));
            }
    }
    return out;
}

// Lays a curve of class cls in normal position on the hexagon: fewest points,
// arcs joining distinct sides without crossings, one closed component.
CurveLayout lay_curve(const SpineComplex& s, const Hexagon& h, std::array<int, 2> cls) {
    if (std::gcd(cls[0], cls[1]) != 1) throw UnsupportedSlope("slope class is not primitive");
    // signed crossings are (w1 + c, w2 + c, c); the fewest points take c = -median
    std::array<int, 3> vals{cls[0], cls[1], 0};
    std::sort(vals.begin(), vals.end());
    int c = -vals[1];
    std::array<int, 3> sigma{cls[0] + c, cls[1] + c, c};
    CurveLayout L;
    L.cls = cls;
    for (int i = 0; i < 3; ++i) L.normal[i] = std::abs(sigma[i]);
    const auto& w = s.faces[h.face].word;
    for (int side = 0; side < 6; ++side) {
        int m = L.normal[hex_slot(h, w[side].edge)];
        for (int k = 0; k < m; ++k) L.points.push_back({side, w[side].forward ? k : m - 1 - k});
    }
    int np = int(L.points.size());
    std::vector<int> twin(np, -1);
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
            if (a != b && L.points[a].first != L.points[b].first &&
                w[L.points[a].first].edge == w[L.points[b].first].edge && L.points[a].second == L.points[b].second)
                twin[a] = b;

    std::vector<CurveLayout> found;
    for (const auto& m : noncrossing(L.points, 0, np)) {
        std::vector<int> partner(np, -1);
        for (auto [a, b] : m) {
            partner[a] = b;
            partner[b] = a;
        }
        CurveLayout cand = L;
        std::array<int, 3> sig{0, 0, 0};
        int p = 0, arcs = 0;
        do {
            int q = partner[p];
            cand.arcs.push_back({p, q});
            ++arcs;
            int side = L.points[q].first;
            int j = hex_slot(h, w[side].edge);
            // leaving through a side read along its edge crosses left to right
            sig[j] += h.sign[j] * (w[side].forward ? 1 : -1);
            p = twin[q];
        } while (p != 0 && arcs <= np);
        if (p != 0 || arcs * 2 != np) continue;
        if (!same_class({sig[0] - sig[2], sig[1] - sig[2]}, cls)) continue;
        found.push_back(std::move(cand));
    }
    if (found.empty()) throw NormalPositionError("no normal curve of the requested class on the hexagon");
    if (found.size() > 1) throw NormalPositionError("normal curve of the requested class is not unique");
    return found.front();
}


int cusp_count(const Triangulation& t) {
    int n = 0;
    for (const auto& c : compute_edge_classes(t).classes) n += !c.compact;
    return n;
}

struct Candidate {
    SpineComplex spine;
    std::vector<SpineOp> ops;
    Triangulation tri;
    int removed = -1;
    int merged = -1;
    std::vector<int> deleted_edges, deleted_vertices;
};

}  // namespace

FillResult dehn_fill_class(const Triangulation& t, int cusp, std::array<int, 2> cls, Slope label) {
    int k = cusp_count(t);
    if (k < 1 || !validate_minimal(t, k, k).pass())
        throw ValidationError("NotInFamily", "Dehn filling needs a minimal triangulation with as many cusps as genus");
    if (cusp < 0 || cusp >= k) throw ValidationError("NoSuchCusp", "cusp index out of range");

    SpineComplex P = dualize(t);
    Hexagon h = find_hexagon(P, cusp);
    CurveLayout curve = lay_curve(P, h, cls);
    std::vector<SpineOp> ops;
    auto run = [&](SpineOp op) {
        int r = P.apply(op);
        ops.push_back(std::move(op));
        return r;
    };

    // points on the hexagon edges, ordered tail to head
    std::array<std::vector<int>, 3> point_vertex;
    int label_no = 0;
    for (int j = 0; j < 3; ++j) {
        int cur = h.edge[j];
        for (int idx = 0; idx < curve.normal[j]; ++idx) {
            int x = run({SpineOp::SubdivideEdge, cur, -1, -1, {}, "x" + std::to_string(++label_no)});
            point_vertex[j].push_back(x);
            cur = int(P.edges.size()) - 1;
        }
    }
    // corner tags of the subdivided hexagon: boundary point id or -1
    const auto hw0 = dualize(t).faces[h.face].word;
    std::vector<int> tags;
    {
        int pt = 0;
        for (int side = 0; side < 6; ++side) {
            int m = curve.normal[hex_slot(h, hw0[side].edge)];
            tags.push_back(-1);
            for (int k2 = 0; k2 < m; ++k2) tags.push_back(pt++);
        }
    }
    std::map<int, std::vector<int>> region_tags{{h.face, tags}};
    std::map<int, int> chord_of_arc, chord_tail_point;
    for (size_t a = 0; a < curve.arcs.size(); ++a) {
        auto [pa, pb] = curve.arcs[a];
        int face = -1, i = -1, j = -1;
        for (const auto& [f, tg] : region_tags) {
            auto ia = std::find(tg.begin(), tg.end(), pa), ib = std::find(tg.begin(), tg.end(), pb);
            if (ia != tg.end() && ib != tg.end()) {
                face = f;
                i = int(ia - tg.begin());
                j = int(ib - tg.begin());
            }
        }
        if (face < 0) throw NormalPositionError("arc endpoints lie in different regions");
        int tail_point = i < j ? pa : pb;
        if (i > j) std::swap(i, j);
        auto tg = region_tags[face];
        int d = run({SpineOp::SplitFace, face, i, j, {}, "d" + std::to_string(a + 1)});
        chord_of_arc[int(a)] = d;
        chord_tail_point[int(a)] = tail_point;
        region_tags.erase(face);
        std::vector<int> ta(tg.begin() + i, tg.begin() + j), tb(tg.begin() + j, tg.end());
        ta.push_back(tg[j]);
        tb.insert(tb.end(), tg.begin(), tg.begin() + i);
        tb.push_back(tg[i]);
        int fa = int(P.faces.size()) - 2;
        region_tags[fa] = ta;
        region_tags[fa + 1] = tb;
    }
    std::vector<int> regions;
    for (const auto& [f, tg] : region_tags) regions.push_back(f);
    std::vector<Occurrence> dword;
    for (size_t a = 0; a < curve.arcs.size(); ++a)
        dword.push_back({chord_of_arc[int(a)], chord_tail_point[int(a)] == curve.arcs[a][0]});
    int disk = run({SpineOp::AddFace, -1, -1, -1, dword, "D"});

    std::vector<Candidate> cands;
    int tried = 0;
    for (int r : regions) {
        ++tried;
        Candidate c;
        c.spine = P;
        c.ops = ops;
        c.removed = r;
        auto step = [&](SpineOp op) {
            int res = c.spine.apply(op);
            c.ops.push_back(std::move(op));
            return res;
        };
        try {
            std::set<int> boundary;
            for (auto o : c.spine.faces[r].word) boundary.insert(o.edge);
            step({SpineOp::RemoveFace, r, -1, -1, {}, ""});
            for (int e : boundary) {
                c.merged = step({SpineOp::DeleteEdge, e, -1, -1, {}, ""});
                c.deleted_edges.push_back(e);
            }
            for (bool again = true; again;) {
                again = false;
                for (int v = 0; v < int(c.spine.vertices.size()); ++v) {
                    if (!c.spine.vertices[v].alive) continue;
                    int deg = 0;
                    for (const auto& e : c.spine.edges)
                        if (e.alive) deg += (e.tail == v) + (e.head == v);
                    if (deg != 2) continue;
                    step({SpineOp::DeleteVertex, v, -1, -1, {}, "e^0"});
                    c.deleted_vertices.push_back(v);
                    again = true;
                    break;
                }
            }
            c.tri = redualize(c.spine);
            if (!validate_minimal(c.tri, k, k - 1).pass()) continue;
        } catch (const Error&) {
            continue;
        }
        cands.push_back(std::move(c));
    }
    if (cands.empty()) throw SurgeryError("no complementary face removal gives a minimal spine");
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
        if (cands[i].spine.edge_count() < cands[best].spine.edge_count()) best = i;
    for (size_t i = 0; i < cands.size(); ++i)
        if (i != best && !is_isomorphic(cands[i].tri, cands[best].tri))
            throw SurgeryError("different face removals give different fillings");

    Candidate& c = cands[best];
    FillResult out;
    out.tri = c.tri;
    out.tri.meta = Meta{k, k - 1};
    out.spine = c.spine;
    out.curve.slope = label;
    out.curve.cls = curve.cls;
    out.curve.normal = curve.normal;
    out.curve.arcs = curve.arcs;
    auto& tr = out.transcript;
    tr.ops = c.ops;
    tr.cusp = cusp;
    tr.intersection_points = curve.normal[0] + curve.normal[1] + curve.normal[2];
    tr.complementary_faces.push_back(c.removed);
    for (int f : regions)
        if (f != c.removed) tr.complementary_faces.push_back(f);
    tr.removed_face = c.removed;
    tr.disk_face = disk;
    tr.merged_face = c.merged;
    tr.deleted_edges = c.deleted_edges;
    tr.deleted_vertices = c.deleted_vertices;
    {
        // edges created by joining at deleted vertices that survive to the end
        SpineComplex replayed = dualize(t);
        for (const auto& op : c.ops) {
            int res = replayed.apply(op);
            if (op.kind == SpineOp::DeleteVertex) tr.new_edges.push_back(res);
        }
        std::erase_if(tr.new_edges, [&](int e) { return !c.spine.edges[e].alive; });
    }
    tr.candidates_tried = tried;
    tr.candidates_valid = int(cands.size());
    tr.final_vertices = c.spine.vertex_count();
    tr.final_edges = c.spine.edge_count();
    tr.final_faces = c.spine.face_count();
    return out;
}

FillResult dehn_fill(const Triangulation& t, int cusp, Slope slope, SlopeConvention convention) {
    auto norm = [](Slope s) { return s.q < 0 || (s.q == 0 && s.p < 0) ? Slope{-s.p, -s.q} : s; };
    Slope s = norm(slope);
    bool ok = false;
    if (convention == SlopeConvention::Theorem) {
        for (auto x : theorem_slopes()) ok = ok || norm(x) == s;
    } else {
        ok = norm(model_slope()) == s;
    }
    if (!ok)
        throw UnsupportedSlope("slope " + std::to_string(slope.p) + "/" + std::to_string(slope.q) +
                               " is not in the supported set");
    return dehn_fill_class(t, cusp, apply_basis(slope_basis(convention), slope), slope);
}

SpineComplex replay(const SpineComplex& start, const SurgeryTranscript& tr) {
    SpineComplex s = start;
    for (const auto& op : tr.ops) s.apply(op);
    return s;
}

SlopeCalibration calibrate_slopes(int k) {
    Triangulation t = build_mkk(k, Twist::Left);
    Triangulation target = build_mk1k(0, k - 1, TwistChoice::A, TwistChoice::A);
    SpineComplex P = dualize(t);
    Hexagon h = find_hexagon(P, 0);

    std::vector<Basis> mats;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d)
                    if (std::abs(a * d - b * c) == 1) mats.push_back({a, b, c, d});
    auto dist = [](const Basis& m) { return std::abs(m[0] - 1) + std::abs(m[1]) + std::abs(m[2]) + std::abs(m[3] - 1); };
    // Signed permutations (orientation flips, swapping the basis curves) are
    // plain convention changes and come before shears; then nearest identity.
    auto key = [&](const Basis& m) {
        bool signed_perm = (m[1] == 0 && m[2] == 0) || (m[0] == 0 && m[3] == 0);
        return std::tuple(!signed_perm, dist(m), std::array{-m[0], -m[1], -m[2], -m[3]});
    };
    std::stable_sort(mats.begin(), mats.end(), [&](const Basis& x, const Basis& y) { return key(x) < key(y); });

    SlopeCalibration cal;
    bool have_proof = false, have_theorem = false;
    for (const auto& m : mats) {
        // the worked example: one point on the first hexagon edge, two on the second
        try {
            auto cl = lay_curve(P, h, apply_basis(m, model_slope()));
            if (cl.normal == std::array<int, 3>{1, 2, 0}) {
                ++cal.proof_candidates;
                if (!have_proof) cal.proof = m, have_proof = true;
            }
        } catch (const Error&) {
        }
        bool all = true;
        for (auto s : theorem_slopes()) {
            try {
                auto r = dehn_fill_class(t, 0, apply_basis(m, s), s);
                if (!is_isomorphic(r.tri, target)) all = false;
            } catch (const Error&) {
                all = false;
            }
            if (!all) break;
        }
        if (all) {
            ++cal.theorem_candidates;
            if (!have_theorem) cal.theorem = m, have_theorem = true;
        }
    }
    if (!have_proof || !have_theorem) throw SurgeryError("slope calibration found no basis");
    // change = proof^-1 * theorem
    const auto& B = cal.proof;
    int det = B[0] * B[3] - B[1] * B[2];
    Basis inv{B[3] * det, -B[1] * det, -B[2] * det, B[0] * det};
    const auto& T = cal.theorem;
    cal.change = {inv[0] * T[0] + inv[1] * T[2], inv[0] * T[1] + inv[1] * T[3], inv[2] * T[0] + inv[3] * T[2],
                  inv[2] * T[1] + inv[3] * T[3]};
    return cal;
}

}  // namespace cuspmin
