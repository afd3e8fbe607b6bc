#include "cuspmin/triangulation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cuspmin/errors.hpp"
#include "dsu.hpp"

namespace cuspmin {

using detail::Dsu;

int Triangulation::add_tet(TetKind kind) {
    Tetra t;
    t.id = size();
    t.kind = kind;
    if (kind == TetKind::NonCompact) t.ideal_vertex = 3;
    tetra_.push_back(t);
    adj_.push_back({});
    return t.id;
}

void Triangulation::glue(int ta, int fa, int tb, int fb, Perm4 p) {
    if (ta < 0 || ta >= size() || tb < 0 || tb >= size() || fa < 0 || fa > 3 || fb < 0 || fb > 3)
        throw GluingError("glue: slot out of range");
    if (p[fa] != fb) throw GluingError("glue: permutation does not carry face " + std::to_string(fa) +
                                       " to face " + std::to_string(fb));
    if (ta == tb && fa == fb) throw GluingError("glue: a face cannot be glued to itself");
    if (adj_[ta][fa].glued() || adj_[tb][fb].glued()) throw GluingError("glue: face already glued");
    adj_[ta][fa] = Adj{tb, fb, p};
    adj_[tb][fb] = Adj{ta, fa, p.inverse()};
}

void Triangulation::unglue(int t, int f) {
    Adj a = adj_.at(t)[f];
    if (!a.glued()) return;
    adj_[a.tet][a.face] = Adj{};
    adj_[t][f] = Adj{};
}

std::vector<FaceGluing> Triangulation::gluings() const {
    std::vector<FaceGluing> out;
    for (int t = 0; t < size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const Adj& a = adj_[t][f];
            if (!a.glued()) continue;
            if (FaceSlot{t, f} < FaceSlot{a.tet, a.face}) out.push_back({{t, f}, {a.tet, a.face}, a.perm});
        }
    return out;
}

int Triangulation::glued_slot_count() const {
    int n = 0;
    for (const auto& row : adj_)
        for (const auto& a : row) n += a.glued();
    return n;
}

std::optional<std::vector<int>> Triangulation::orientation_signs() const {
    std::vector<int> sign(size(), 0);
    for (int root = 0; root < size(); ++root) {
        if (sign[root]) continue;
        sign[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (int f = 0; f < 4; ++f) {
                const Adj& a = adj_[t][f];
                if (!a.glued()) continue;
                int want = -a.perm.sign() * sign[t];
                if (!sign[a.tet]) {
                    sign[a.tet] = want;
                    q.push(a.tet);
                } else if (sign[a.tet] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return sign;
}

bool Triangulation::orient() {
    auto s = orientation_signs();
    if (!s) return false;
    for (int t = 0; t < size(); ++t) tetra_[t].orientation = (*s)[t];
    return true;
}

bool Triangulation::connected() const {
    if (size() == 0) return true;
    std::vector<char> seen(size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (int f = 0; f < 4; ++f) {
            const Adj& a = adj_[t][f];
            if (a.glued() && !seen[a.tet]) {
                seen[a.tet] = 1;
                ++count;
                q.push(a.tet);
            }
        }
    }
    return count == size();
}

void Triangulation::relabel_tet(int t, Perm4 p) {
    auto gl = gluings();
    for (const auto& g : gl) {
        if (g.a.tet == t || g.b.tet == t) unglue(g.a.tet, g.a.face);
    }
    Perm4 pinv = p.inverse();
    for (auto g : gl) {
        if (g.a.tet != t && g.b.tet != t) continue;
        if (g.a.tet == t) {
            g.a.face = p[g.a.face];
            g.map = g.map * pinv;
        }
        if (g.b.tet == t) {
            g.b.face = p[g.b.face];
            g.map = p * g.map;
        }
        glue(g.a.tet, g.a.face, g.b.tet, g.b.face, g.map);
    }
    if (tetra_[t].ideal_vertex) tetra_[t].ideal_vertex = p[*tetra_[t].ideal_vertex];
    if (!edge_labels.empty()) {
        std::array<std::string, 6> relabeled;
        for (int e = 0; e < 6; ++e) {
            auto v = edge_vertices(e);
            relabeled[edge_index(p[v[0]], p[v[1]])] = edge_labels[t][e];
        }
        edge_labels[t] = relabeled;
    }
}

int append_triangulation(Triangulation& dst, const Triangulation& src) {
    int off = dst.size();
    bool labels = !dst.edge_labels.empty() || !src.edge_labels.empty();
    if (labels) dst.edge_labels.resize(off);
    for (const auto& t : src.tetra()) {
        dst.add_tet(t.kind);
        if (labels) dst.edge_labels.push_back(src.edge_labels.empty() ? std::array<std::string, 6>{}
                                                                      : src.edge_labels[t.id]);
    }
    for (const auto& g : src.gluings()) dst.glue(g.a.tet + off, g.a.face, g.b.tet + off, g.b.face, g.map);
    return off;
}

// ---- edge and vertex classes ---------------------------------------------

namespace {

bool slot_compact(const Triangulation& t, int tet, int e) {
    const auto& T = t.tet(tet);
    if (!T.ideal_vertex) return true;
    auto v = edge_vertices(e);
    return v[0] != *T.ideal_vertex && v[1] != *T.ideal_vertex;
}

template <class F>
void for_each_face_edge(int face, F&& f) {
    for (int u = 0; u < 4; ++u)
        for (int w = u + 1; w < 4; ++w)
            if (u != face && w != face) f(u, w);
}

}  // namespace

int EdgeClassTable::compact_count() const {
    return int(std::count_if(classes.begin(), classes.end(), [](const EdgeClass& c) { return c.compact; }));
}

std::vector<int> EdgeClassTable::compact_incidences() const {
    std::vector<int> out;
    for (const auto& c : classes)
        if (c.compact) out.push_back(c.incidence);
    return out;
}

std::vector<int> EdgeClassTable::cusp_incidences() const {
    std::vector<int> out;
    for (const auto& c : classes)
        if (!c.compact) out.push_back(c.incidence);
    return out;
}

EdgeClassTable compute_edge_classes(const Triangulation& t) {
    int n = t.size();
    Dsu dsu(6 * n);
    for (const auto& g : t.gluings()) {
        for_each_face_edge(g.a.face, [&](int u, int w) {
            dsu.unite(6 * g.a.tet + edge_index(u, w), 6 * g.b.tet + edge_index(g.map[u], g.map[w]));
        });
    }
    EdgeClassTable table;
    table.class_of.assign(n, {});
    std::map<int, int> root_to_class;
    for (int s = 0; s < 6 * n; ++s) {
        int r = dsu.find(s);
        auto it = root_to_class.find(r);
        int c;
        if (it == root_to_class.end()) {
            c = int(table.classes.size());
            root_to_class[r] = c;
            table.classes.push_back({});
        } else {
            c = it->second;
        }
        int tet = s / 6, e = s % 6;
        table.class_of[tet][e] = c;
        auto& cls = table.classes[c];
        cls.slots.push_back({tet, e});
        if (!slot_compact(t, tet, e)) cls.compact = false;
    }
    for (auto& cls : table.classes) {
        cls.incidence = int(cls.slots.size());
        if (!t.edge_labels.empty()) {
            auto [tet, e] = cls.slots.front();
            cls.label = t.edge_labels[tet][e];
        }
    }
    return table;
}

std::vector<VertexClass> compute_vertex_classes(const Triangulation& t) {
    int n = t.size();
    Dsu verts(4 * n);
    Dsu corners(16 * n);  // (tet, v, w): the corner of the link of v at edge vw
    auto corner = [](int tet, int v, int w) { return 16 * tet + 4 * v + w; };
    auto gl = t.gluings();
    for (const auto& g : gl) {
        for (int v = 0; v < 4; ++v) {
            if (v == g.a.face) continue;
            verts.unite(4 * g.a.tet + v, 4 * g.b.tet + g.map[v]);
            for (int w = 0; w < 4; ++w) {
                if (w == g.a.face || w == v) continue;
                corners.unite(corner(g.a.tet, v, w), corner(g.b.tet, g.map[v], g.map[w]));
            }
        }
    }
    std::map<int, int> root_to_class;
    std::vector<VertexClass> out;
    for (int s = 0; s < 4 * n; ++s) {
        int r = verts.find(s);
        auto [it, fresh] = root_to_class.try_emplace(r, int(out.size()));
        if (fresh) out.push_back({});
        out[it->second].slots.push_back({s / 4, s % 4});
    }
    for (auto& vc : out) {
        std::set<int> corner_roots;
        int faces = int(vc.slots.size());
        int glued_link_edges = 0, free_link_edges = 0;
        bool all_ideal = true;
        for (auto [tet, v] : vc.slots) {
            const auto& T = t.tet(tet);
            if (!T.ideal_vertex || *T.ideal_vertex != v) all_ideal = false;
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                corner_roots.insert(corners.find(corner(tet, v, w)));
                // link edge of v lying in face w
                if (t.is_glued(tet, w))
                    ++glued_link_edges;
                else
                    ++free_link_edges;
            }
        }
        int edges = glued_link_edges / 2 + free_link_edges;
        vc.link_euler = int(corner_roots.size()) - edges + faces;
        vc.ideal = all_ideal;
    }
    return out;
}

bool has_reversed_edge(const Triangulation& t) {
    int n = t.size();
    Dsu dsu(16 * n);
    auto id = [](int tet, int u, int w) { return 16 * tet + 4 * u + w; };
    for (const auto& g : t.gluings()) {
        for (int u = 0; u < 4; ++u)
            for (int w = 0; w < 4; ++w) {
                if (u == w || u == g.a.face || w == g.a.face) continue;
                dsu.unite(id(g.a.tet, u, w), id(g.b.tet, g.map[u], g.map[w]));
            }
    }
    for (int tet = 0; tet < n; ++tet)
        for (int e = 0; e < 6; ++e) {
            auto v = edge_vertices(e);
            if (dsu.find(id(tet, v[0], v[1])) == dsu.find(id(tet, v[1], v[0]))) return true;
        }
    return false;
}

// ---- validation ------------------------------------------------------------

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "ok   " : "FAIL ") << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
    }
    return os.str();
}

namespace {
std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}
}  // namespace

ValidationReport validate_minimal(const Triangulation& t, int g, int k) {
    ValidationReport rep;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    add("tetra_count", t.size() == g + k,
        std::to_string(t.size()) + " tetra, expected " + std::to_string(g + k));

    int nc = 0;
    for (const auto& T : t.tetra()) nc += T.kind == TetKind::NonCompact;
    add("noncompact_count", nc == 2 * k, std::to_string(nc) + " non-compact, expected " + std::to_string(2 * k));

    add("all_faces_glued", t.glued_slot_count() == 4 * t.size(),
        std::to_string(t.glued_slot_count()) + "/" + std::to_string(4 * t.size()) + " face slots glued");

    bool conn = t.connected();
    add("connected", conn);
    add("orientation", t.orientation_signs().has_value());

    auto vcs = compute_vertex_classes(t);
    int ideal_classes = 0, finite_classes = 0;
    bool cusps_ok = true, finite_ok = true;
    std::string cusp_detail;
    for (const auto& vc : vcs) {
        bool any_ideal = std::any_of(vc.slots.begin(), vc.slots.end(), [&](auto s) {
            return t.tet(s.first).ideal_vertex && *t.tet(s.first).ideal_vertex == s.second;
        });
        if (any_ideal && !vc.ideal) {
            cusps_ok = false;
            cusp_detail = "ideal vertex identified with a finite vertex";
        }
        if (vc.ideal) {
            ++ideal_classes;
            bool two_tets = vc.slots.size() == 2 && vc.slots[0].first != vc.slots[1].first;
            if (!two_tets || vc.link_euler != 0) {
                cusps_ok = false;
                cusp_detail = "cusp with " + std::to_string(vc.slots.size()) + " corners, link euler " +
                              std::to_string(vc.link_euler);
            }
        } else {
            ++finite_classes;
            if (vc.link_euler != 2 - 2 * g) finite_ok = false;
        }
    }
    if (ideal_classes != k) {
        cusps_ok = false;
        cusp_detail = std::to_string(ideal_classes) + " cusps, expected " + std::to_string(k);
    }
    add("cusp_pairing", cusps_ok, cusp_detail);
    add("boundary_surface", finite_ok && finite_classes == 1,
        std::to_string(finite_classes) + " finite vertex classes");

    auto ec = compute_edge_classes(t);
    auto comp = ec.compact_incidences();
    auto cusp = ec.cusp_incidences();
    bool profile = comp.size() == 1 && comp[0] == 6 * g && int(cusp.size()) == k &&
                   std::all_of(cusp.begin(), cusp.end(), [](int x) { return x == 6; });
    add("edge_profile", profile, "compact " + join(comp) + ", cusp " + join(cusp));
    add("no_reversed_edge", !has_reversed_edge(t));
    return rep;
}

// ---- constructions ---------------------------------------------------------

void glue_cusp_pair(Triangulation& t, int a, int b) {
    t.glue(a, 2, b, 2, Perm4());
    t.glue(a, 0, b, 1, Perm4(1, 2, 0, 3));
    t.glue(a, 1, b, 0, Perm4(2, 0, 1, 3));
}

namespace {

const int kFiniteEdges[3] = {0, 1, 3};  // edges of face 3

std::string opposite_label(const std::string& l) {
    if (l == "a") return "p";
    if (l == "b") return "q";
    if (l == "c") return "r";
    return "";
}

}  // namespace

ChainComplex build_chain(int length) {
    if (length <= 0) throw ValidationError("InvalidLength", "chain length must be positive");
    ChainComplex c;
    c.length = length;
    Triangulation& t = c.tri;
    for (int i = 0; i < 2 * length; ++i) t.add_tet(TetKind::NonCompact);
    for (int i = 0; i < length; ++i) glue_cusp_pair(t, 2 * i, 2 * i + 1);
    for (int m = 1; m < length; ++m) t.glue(2 * m - 1, 3, 2 * m, 3, Perm4());
    t.orient();

    t.edge_labels.assign(t.size(), {});
    auto ec = compute_edge_classes(t);
    const std::map<int, std::string> first = {{0, "a"}, {3, "b"}, {1, "c"}};
    for (auto [e, name] : first)
        for (auto [tet, e2] : ec.classes[ec.class_of[0][e]].slots) t.edge_labels[tet][e2] = name;
    for (int tet = 0; tet < t.size(); ++tet)
        for (int e : kFiniteEdges) {
            if (t.edge_labels[tet][e].empty())
                throw InternalCheckError("ChainLabels", "finite edge without a label");
            t.edge_labels[tet][opposite_edge(e)] = opposite_label(t.edge_labels[tet][e]);
        }
    return c;
}

std::array<std::string, 3> boundary_label_cycle(const Triangulation& tri, int t) {
    std::array<int, 3> v = tri.tet(t).orientation > 0 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
    std::array<std::string, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = tri.edge_labels.at(t)[edge_index(v[i], v[(i + 1) % 3])];
    return out;
}

bool same_cyclic_order(const std::array<std::string, 3>& x, const std::array<std::string, 3>& y) {
    for (int r = 0; r < 3; ++r)
        if (x[0] == y[r] && x[1] == y[(r + 1) % 3] && x[2] == y[(r + 2) % 3]) return true;
    return false;
}

bool chain_label_order_agrees(const ChainComplex& c) {
    return same_cyclic_order(boundary_label_cycle(c.tri, c.first_tet()), boundary_label_cycle(c.tri, c.last_tet()));
}

Triangulation glue_chain_ends(const ChainComplex& chain, Perm4 p) {
    Triangulation t = chain.tri;
    t.glue(chain.last_tet(), 3, chain.first_tet(), 3, p);
    t.orient();
    t.meta = Meta{chain.length, chain.length};
    return t;
}

Triangulation close_chain(const ChainComplex& chain, Twist twist) {
    if (twist == Twist::Identity)
        throw IdentityTwistError("the identity pairing of the chain ends leaves three compact edges");
    if (chain.length % 2 != 0)
        throw ChainParityError("a chain of odd length " + std::to_string(chain.length) +
                               " cannot be closed by a 3-cycle twist");
    std::map<std::string, std::string> sigma =
        twist == Twist::Left ? std::map<std::string, std::string>{{"a", "b"}, {"b", "c"}, {"c", "a"}}
                             : std::map<std::string, std::string>{{"a", "c"}, {"b", "a"}, {"c", "b"}};
    const auto& L = chain.tri.edge_labels;
    int last = chain.last_tet(), first = chain.first_tet();
    for (int idx = 0; idx < 24; ++idx) {
        Perm4 p = Perm4::from_index(idx);
        if (p[3] != 3) continue;
        bool ok = true;
        for (int e : kFiniteEdges) {
            auto v = edge_vertices(e);
            if (L[first][edge_index(p[v[0]], p[v[1]])] != sigma.at(L[last][e])) ok = false;
        }
        if (!ok) continue;
        int s = p.sign() * chain.tri.tet(last).orientation * chain.tri.tet(first).orientation;
        if (s != -1) throw ChainParityError("twist closure would preserve orientation");
        return glue_chain_ends(chain, p);
    }
    throw InternalCheckError("ChainLabels", "no gluing realizes the requested twist");
}

Triangulation build_mkk(int k, Twist twist) { return close_chain(build_chain(k), twist); }

int compact_edge_index(int label) {
    // E1..E6 with vertices D=0, C=1, B=2, A=3
    static const int idx[7] = {-1, 5, 2, 1, 4, 3, 0};
    if (label < 1 || label > 6) throw std::out_of_range("compact edge label");
    return idx[label];
}

namespace {

// Vertices of face f in ascending order.
std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> v{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f) v[n++] = i;
    return v;
}

std::vector<int> edges_of_face(int f) {
    std::vector<int> out;
    for_each_face_edge(f, [&](int u, int w) { out.push_back(edge_index(u, w)); });
    return out;
}

// Attaches a chain of length len (or a direct self-gluing when len == 0)
// across faces f1 and f2 of the compact tetrahedron 0.
void attach_chain(Triangulation& t, int len, int f1, int f2, Perm4 first_map, int central_edge,
                  TwistChoice choice) {
    struct Candidate {
        std::vector<int> key;
        Perm4 perm;
    };
    std::vector<Candidate> cands;
    if (len == 0) {
        for (int idx = 0; idx < 24; ++idx) {
            Perm4 p = Perm4::from_index(idx);
            if (p[f1] != f2 || p.sign() != -1) continue;
            auto v = edge_vertices(central_edge);
            if (edge_index(p[v[0]], p[v[1]]) == central_edge) continue;
            Perm4 pi = p.inverse();
            std::vector<int> key;
            for (int e : edges_of_face(f2)) {
                auto w = edge_vertices(e);
                key.push_back(edge_index(pi[w[0]], pi[w[1]]));
            }
            cands.push_back({key, p});
        }
        std::sort(cands.begin(), cands.end(), [](auto& x, auto& y) { return x.key < y.key; });
        if (cands.size() != 2) throw InternalCheckError("TwistEnumeration", "expected two admissible self-gluings");
        const auto& c = cands[choice == TwistChoice::A ? 0 : 1];
        t.glue(0, f1, 0, f2, c.perm);
        return;
    }

    ChainComplex chain = build_chain(len);
    int off = append_triangulation(t, chain.tri);
    int first = off + chain.first_tet(), last = off + chain.last_tet();
    t.glue(first, 3, 0, f1, first_map);
    auto signs = t.orientation_signs();
    if (!signs) throw InternalCheckError("Orientation", "chain attachment is not orientable");
    const auto& L = t.edge_labels;
    for (int idx = 0; idx < 24; ++idx) {
        Perm4 p = Perm4::from_index(idx);
        if (p[3] != f2) continue;
        if (p.sign() * (*signs)[last] * (*signs)[0] != -1) continue;
        Perm4 pi = p.inverse();
        std::vector<int> key;
        int central_image = -1;
        for (int e : edges_of_face(f2)) {
            auto w = edge_vertices(e);
            const std::string& label = L[last][edge_index(pi[w[0]], pi[w[1]])];
            int src = -1;
            for (int fe : kFiniteEdges)
                if (L[first][fe] == label) src = fe;
            auto sv = edge_vertices(src);
            int image = edge_index(first_map[sv[0]], first_map[sv[1]]);
            key.push_back(image);
            if (e == central_edge) central_image = image;
        }
        if (central_image == central_edge) continue;
        cands.push_back({key, p});
    }
    std::sort(cands.begin(), cands.end(), [](auto& x, auto& y) { return x.key < y.key; });
    if (cands.size() != 2) throw InternalCheckError("TwistEnumeration", "expected two admissible end gluings");
    t.glue(last, 3, 0, f2, cands[choice == TwistChoice::A ? 0 : 1].perm);
}

}  // namespace

Triangulation build_mk1k(int i, int j, TwistChoice t1, TwistChoice t2) {
    if (i < 0 || j < 0 || i > j || i + j < 1)
        throw InvalidPartition("need 0 <= i <= j and i + j >= 1, got (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    if (i % 2 == 0 && j % 2 == 0)
        throw ParityError("at least one chain must have odd length, got (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
    Triangulation t;
    t.add_tet(TetKind::Compact);
    t.edge_labels.assign(1, {});
    for (int l = 1; l <= 6; ++l) t.edge_labels[0][compact_edge_index(l)] = "E" + std::to_string(l);

    attach_chain(t, i, 0, 1, Perm4(1, 2, 3, 0), compact_edge_index(1), t1);
    attach_chain(t, j, 2, 3, Perm4(0, 1, 3, 2), compact_edge_index(6), t2);
    if (!t.orient()) throw InternalCheckError("Orientation", "construction is not orientable");
    t.meta = Meta{i + j + 1, i + j};
    return t;
}

// ---- serialization -------------------------------------------------------

}  // namespace cuspmin

#include <json.hpp>

namespace cuspmin {

std::string to_json(const Triangulation& t) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json tets = ordered_json::array();
    for (const auto& T : t.tetra()) {
        ordered_json o;
        o["id"] = T.id;
        o["kind"] = T.kind == TetKind::NonCompact ? "nc" : "c";
        o["ideal_vertex"] = T.ideal_vertex ? ordered_json(*T.ideal_vertex) : ordered_json(nullptr);
        tets.push_back(o);
    }
    j["tetra"] = tets;
    ordered_json gl = ordered_json::array();
    for (const auto& g : t.gluings()) {
        ordered_json o;
        o["a"] = {g.a.tet, g.a.face};
        o["b"] = {g.b.tet, g.b.face};
        ordered_json m = ordered_json::array();
        for (int v : face_vertices(g.a.face)) m.push_back(g.map[v]);
        o["map"] = m;
        gl.push_back(o);
    }
    j["gluings"] = gl;
    ordered_json meta;
    meta["g"] = t.meta ? ordered_json(t.meta->g) : ordered_json(nullptr);
    meta["k"] = t.meta ? ordered_json(t.meta->k) : ordered_json(nullptr);
    j["meta"] = meta;
    return j.dump(2) + "\n";
}

Triangulation triangulation_from_json(const std::string& s) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(s);
    } catch (const json::exception& e) {
        throw ValidationError("JsonParse", e.what());
    }
    Triangulation t;
    try {
        int expected = 0;
        for (const auto& o : j.at("tetra")) {
            if (o.at("id").get<int>() != expected++) throw ValidationError("JsonSchema", "tetra ids must be 0..n-1");
            std::string kind = o.at("kind");
            if (kind != "nc" && kind != "c") throw ValidationError("JsonSchema", "unknown tetra kind " + kind);
            int id = t.add_tet(kind == "nc" ? TetKind::NonCompact : TetKind::Compact);
            const auto& iv = o.at("ideal_vertex");
            if (kind == "nc" && (iv.is_null() || iv.get<int>() != 3))
                throw ValidationError("JsonSchema", "non-compact tetra must have ideal vertex 3");
            if (kind == "c" && !iv.is_null()) throw ValidationError("JsonSchema", "compact tetra has no ideal vertex");
            (void)id;
        }
        for (const auto& o : j.at("gluings")) {
            int ta = o.at("a").at(0), fa = o.at("a").at(1), tb = o.at("b").at(0), fb = o.at("b").at(1);
            if (fa < 0 || fa > 3) throw ValidationError("JsonSchema", "face index out of range");
            std::array<int, 4> img{};
            img[fa] = fb;
            auto fv = face_vertices(fa);
            for (int i = 0; i < 3; ++i) img[fv[i]] = o.at("map").at(i).get<int>();
            Perm4 p(img[0], img[1], img[2], img[3]);
            if (!p.valid()) throw ValidationError("JsonSchema", "gluing map is not a bijection");
            t.glue(ta, fa, tb, fb, p);
        }
        if (j.contains("meta") && j["meta"].is_object() && !j["meta"].value("g", json()).is_null())
            t.meta = Meta{j["meta"].at("g").get<int>(), j["meta"].at("k").get<int>()};
    } catch (const json::exception& e) {
        throw ValidationError("JsonSchema", e.what());
    }
    t.orient();
    return t;
}

}  // namespace cuspmin
