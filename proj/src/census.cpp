#include "cuspmin/census.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <queue>
#include <set>

#include "cuspmin/errors.hpp"
#include "dsu.hpp"

namespace cuspmin {

// ---- isomorphisms ----------------------------------------------------------

CombIso CombIso::compose(const CombIso& first) const {
    CombIso out;
    int n = int(first.tet_map.size());
    out.tet_map.resize(n);
    out.vertex_map.resize(n);
    for (int x = 0; x < n; ++x) {
        int y = first.tet_map[x];
        out.tet_map[x] = tet_map[y];
        out.vertex_map[x] = vertex_map[y] * first.vertex_map[x];
    }
    out.orientation_character = orientation_character * first.orientation_character;
    return out;
}

CombIso CombIso::inverse() const {
    CombIso out;
    int n = int(tet_map.size());
    out.tet_map.resize(n);
    out.vertex_map.resize(n);
    for (int x = 0; x < n; ++x) {
        out.tet_map[tet_map[x]] = x;
        out.vertex_map[tet_map[x]] = vertex_map[x].inverse();
    }
    out.orientation_character = orientation_character;
    return out;
}

bool CombIso::is_identity() const {
    for (size_t x = 0; x < tet_map.size(); ++x)
        if (tet_map[x] != int(x) || !vertex_map[x].is_identity()) return false;
    return true;
}

namespace {

bool kinds_match(const Tetra& a, const Tetra& b, Perm4 q) {
    if (a.kind != b.kind) return false;
    if (a.ideal_vertex.has_value() != b.ideal_vertex.has_value()) return false;
    if (a.ideal_vertex && q[*a.ideal_vertex] != *b.ideal_vertex) return false;
    return true;
}

// Vertex bijections a seed may use on a tetrahedron of this kind.
std::vector<Perm4> seed_perms(const Tetra& from, const Tetra& to) {
    std::vector<Perm4> out;
    for (int i = 0; i < 24; ++i) {
        Perm4 q = Perm4::from_index(i);
        if (kinds_match(from, to, q)) out.push_back(q);
    }
    return out;
}

}  // namespace

bool is_valid_iso(const Triangulation& t1, const Triangulation& t2, const CombIso& iso) {
    if (t1.size() != t2.size() || int(iso.tet_map.size()) != t1.size()) return false;
    std::vector<char> hit(t2.size(), 0);
    for (int x = 0; x < t1.size(); ++x) {
        int y = iso.tet_map[x];
        if (y < 0 || y >= t2.size() || hit[y]) return false;
        hit[y] = 1;
        if (!kinds_match(t1.tet(x), t2.tet(y), iso.vertex_map[x])) return false;
        for (int f = 0; f < 4; ++f) {
            const auto& a = t1.adj(x, f);
            const auto& b = t2.adj(y, iso.vertex_map[x][f]);
            if (a.glued() != b.glued()) return false;
            if (!a.glued()) continue;
            if (b.tet != iso.tet_map[a.tet]) return false;
            if (b.perm * iso.vertex_map[x] != iso.vertex_map[a.tet] * a.perm) return false;
        }
    }
    return true;
}

std::optional<CombIso> propagate_iso(const Triangulation& t1, const Triangulation& t2, int y0, Perm4 q0) {
    int n = t1.size();
    if (n != t2.size() || n == 0) return std::nullopt;
    if (!kinds_match(t1.tet(0), t2.tet(y0), q0)) return std::nullopt;
    CombIso iso;
    iso.tet_map.assign(n, -1);
    iso.vertex_map.assign(n, Perm4());
    std::vector<char> used(n, 0);
    iso.tet_map[0] = y0;
    iso.vertex_map[0] = q0;
    used[y0] = 1;
    std::queue<int> queue;
    queue.push(0);
    int mapped = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop();
        int y = iso.tet_map[x];
        Perm4 q = iso.vertex_map[x];
        for (int f = 0; f < 4; ++f) {
            const auto& a = t1.adj(x, f);
            const auto& b = t2.adj(y, q[f]);
            if (a.glued() != b.glued()) return std::nullopt;
            if (!a.glued()) continue;
            Perm4 q2 = b.perm * q * a.perm.inverse();
            int x2 = a.tet, y2 = b.tet;
            if (iso.tet_map[x2] < 0) {
                if (used[y2] || !kinds_match(t1.tet(x2), t2.tet(y2), q2)) return std::nullopt;
                iso.tet_map[x2] = y2;
                iso.vertex_map[x2] = q2;
                used[y2] = 1;
                ++mapped;
                queue.push(x2);
            } else if (iso.tet_map[x2] != y2 || iso.vertex_map[x2] != q2) {
                return std::nullopt;
            }
        }
    }
    if (mapped != n) return std::nullopt;
    auto s1 = t1.orientation_signs(), s2 = t2.orientation_signs();
    iso.orientation_character = (s1 && s2) ? (*s2)[y0] * q0.sign() * (*s1)[0] : 0;
    return iso;
}

std::optional<CombIso> is_isomorphic(const Triangulation& t1, const Triangulation& t2) {
    if (t1.size() != t2.size() || t1.size() == 0) return std::nullopt;
    for (int y = 0; y < t2.size(); ++y)
        for (Perm4 q : seed_perms(t1.tet(0), t2.tet(y)))
            if (auto iso = propagate_iso(t1, t2, y, q)) return iso;
    return std::nullopt;
}

int element_order(const CombIso& g) {
    CombIso p = g;
    int order = 1;
    while (!p.is_identity()) {
        p = g.compose(p);
        ++order;
        if (order > 1000000) throw InternalCheckError("GroupOrder", "element of unbounded order");
    }
    return order;
}

int AutGroup::orientation_preserving_order() const {
    return int(std::count_if(elements.begin(), elements.end(),
                             [](const CombIso& g) { return g.orientation_character == 1; }));
}

namespace {

bool preserves_labels(const Triangulation& t, const CombIso& g) {
    if (t.edge_labels.empty()) return true;
    for (int x = 0; x < t.size(); ++x)
        for (int e = 0; e < 6; ++e) {
            auto v = edge_vertices(e);
            int e2 = edge_index(g.vertex_map[x][v[0]], g.vertex_map[x][v[1]]);
            if (t.edge_labels[x][e] != t.edge_labels[g.tet_map[x]][e2]) return false;
        }
    return true;
}

int group_closure_size(const std::vector<CombIso>& gens) {
    std::vector<CombIso> elems;
    CombIso id;
    id.tet_map.resize(gens.front().tet_map.size());
    id.vertex_map.resize(gens.front().tet_map.size());
    for (size_t i = 0; i < id.tet_map.size(); ++i) id.tet_map[i] = int(i);
    elems.push_back(id);
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            CombIso h = g.compose(elems[i]);
            if (std::find(elems.begin(), elems.end(), h) == elems.end()) elems.push_back(h);
        }
    return int(elems.size());
}

int cusp_count(const Triangulation& t) {
    int n = 0;
    for (const auto& vc : compute_vertex_classes(t)) n += vc.ideal;
    return n;
}

}  // namespace

AutGroup automorphism_group(const Triangulation& t) {
    AutGroup g;
    for (int y = 0; y < t.size(); ++y)
        for (Perm4 q : seed_perms(t.tet(0), t.tet(y)))
            if (auto iso = propagate_iso(t, t, y, q)) g.elements.push_back(*iso);

    int k = cusp_count(t);
    if (k > 0 && g.order() == 6 * k) {
        // prefer the rotation that advances the chain by one cusp and keeps labels
        int best_t = -1;
        for (int pass = 0; pass < 2 && best_t < 0; ++pass)
            for (int i = 0; i < g.order(); ++i) {
                const auto& e = g.elements[i];
                if (element_order(e) != 3 * k) continue;
                if (pass == 0 && !(e.tet_map[0] == 2 && preserves_labels(t, e))) continue;
                best_t = i;
                break;
            }
        if (best_t >= 0) {
            const auto& tt = g.elements[best_t];
            CombIso tinv = tt.inverse();
            for (int i = 0; i < g.order(); ++i) {
                const auto& r = g.elements[i];
                if (element_order(r) != 2) continue;
                if (!(r.compose(tt).compose(r) == tinv)) continue;
                DihedralCertificate c;
                c.r = i;
                c.t = best_t;
                c.rotation_order = 3 * k;
                c.verified = r.compose(r).is_identity() && element_order(tt) == 3 * k &&
                             group_closure_size({r, tt}) == g.order();
                if (!c.verified) continue;
                g.dihedral = c;
                break;
            }
        }
    }
    return g;
}

// ---- canonical form --------------------------------------------------------

namespace {

Perm4 normalize_ideal(const Tetra& T, Perm4 sigma) {
    if (!T.ideal_vertex) return sigma;
    int at = sigma[*T.ideal_vertex];
    if (at == 3) return sigma;
    return Perm4::transposition(at, 3) * sigma;
}

std::vector<int> transcript(const Triangulation& t, int seed, Perm4 sigma0) {
    int n = t.size();
    std::vector<int> newidx(n, -1), order;
    std::vector<Perm4> sigma(n);
    newidx[seed] = 0;
    sigma[seed] = sigma0;
    order.push_back(seed);
    std::vector<int> out;
    out.reserve(n * 9);
    for (size_t i = 0; i < order.size(); ++i) {
        int x = order[i];
        Perm4 s = sigma[x], sinv = s.inverse();
        out.push_back(t.tet(x).kind == TetKind::NonCompact ? 0 : 1);
        for (int fn = 0; fn < 4; ++fn) {
            const auto& a = t.adj(x, sinv[fn]);
            if (!a.glued()) {
                out.push_back(-1);
                out.push_back(-1);
                continue;
            }
            if (newidx[a.tet] < 0) {
                newidx[a.tet] = int(order.size());
                order.push_back(a.tet);
                sigma[a.tet] = normalize_ideal(t.tet(a.tet), s * a.perm.inverse());
            }
            out.push_back(newidx[a.tet]);
            out.push_back((sigma[a.tet] * a.perm * sinv).index());
        }
    }
    if (int(order.size()) != n) out.push_back(-2);  // disconnected
    return out;
}

}  // namespace

std::vector<int> canonical_form(const Triangulation& t) {
    std::vector<int> best;
    bool have = false;
    for (int x = 0; x < t.size(); ++x)
        for (Perm4 s : seed_perms(t.tet(x), t.tet(x))) {
            auto tr = transcript(t, x, s);
            if (!have || tr < best) {
                best = std::move(tr);
                have = true;
            }
        }
    return best;
}

std::string canonical_hash(const Triangulation& t) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : canonical_form(t)) {
        auto u = static_cast<std::uint32_t>(v);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- partition invariant ---------------------------------------------------

std::vector<int> GraphGM::degrees() const {
    std::vector<int> d(vertex_count, 0);
    for (auto [a, b] : edges) {
        ++d[a];
        ++d[b];
    }
    return d;
}

GraphGM build_graph_gm(const Triangulation& t) {
    int compact = -1;
    for (const auto& T : t.tetra())
        if (T.kind == TetKind::Compact) {
            if (compact >= 0) throw MalformedGraph("more than one compact tetrahedron");
            compact = T.id;
        }
    if (compact < 0) throw MalformedGraph("no compact tetrahedron");
    std::vector<int> node(t.size(), -1);
    node[compact] = 0;
    int next = 1;
    for (const auto& vc : compute_vertex_classes(t)) {
        if (!vc.ideal) continue;
        for (auto [tet, v] : vc.slots) {
            if (node[tet] >= 0) throw MalformedGraph("tetrahedron shared by two cusps");
            node[tet] = next;
        }
        ++next;
    }
    for (int x = 0; x < t.size(); ++x)
        if (node[x] < 0) throw MalformedGraph("tetrahedron outside every cusp");
    GraphGM g;
    g.vertex_count = next;
    for (const auto& gl : t.gluings()) {
        bool finite_a = t.tet(gl.a.tet).kind == TetKind::Compact || gl.a.face == 3;
        if (!finite_a) continue;
        g.edges.push_back({node[gl.a.tet], node[gl.b.tet]});
    }
    return g;
}

PartitionInvariant partition_invariant(const Triangulation& t) {
    GraphGM g = build_graph_gm(t);
    auto deg = g.degrees();
    if (deg[0] != 4) throw MalformedGraph("wedge point has degree " + std::to_string(deg[0]));
    for (int v = 1; v < g.vertex_count; ++v)
        if (deg[v] != 2) throw MalformedGraph("cusp vertex of degree " + std::to_string(deg[v]));
    int m = int(g.edges.size());
    std::vector<char> used(m, 0);
    std::vector<int> visits(g.vertex_count, 0);
    std::vector<int> lengths;
    for (int start = 0; start < m; ++start) {
        auto [a, b] = g.edges[start];
        if (used[start] || (a != 0 && b != 0)) continue;
        used[start] = 1;
        int cur = a == 0 ? b : a;
        int len = 0;
        while (cur != 0) {
            ++len;
            ++visits[cur];
            int nxt = -1;
            for (int e = 0; e < m; ++e) {
                if (used[e]) continue;
                if (g.edges[e].first == cur || g.edges[e].second == cur) {
                    used[e] = 1;
                    nxt = g.edges[e].first == cur ? g.edges[e].second : g.edges[e].first;
                    break;
                }
            }
            if (nxt < 0) throw MalformedGraph("open path in the cusp graph");
            cur = nxt;
        }
        lengths.push_back(len);
    }
    if (lengths.size() != 2) throw MalformedGraph("expected two cycles at the wedge point");
    for (int v = 1; v < g.vertex_count; ++v)
        if (visits[v] != 1) throw MalformedGraph("cusp vertex not on exactly one cycle");
    std::sort(lengths.begin(), lengths.end());
    return {lengths[0], lengths[1]};
}

// ---- families --------------------------------------------------------------

std::string family_name(Family f) { return f == Family::Mkk ? "mkk" : "mk1k"; }

Family parse_family(const std::string& s) {
    if (s == "mkk" || s == "Mkk") return Family::Mkk;
    if (s == "mk1k" || s == "Mk1k") return Family::Mk1k;
    throw ValidationError("UnknownFamily", "unknown family '" + s + "' (use mkk or mk1k)");
}

std::vector<FamilyMember> enumerate_family(Family family, int k) {
    if (k < 1) throw ValidationError("InvalidK", "k must be positive");
    std::vector<FamilyMember> out;
    std::set<std::string> seen;
    auto add = [&](Triangulation t, std::optional<PartitionInvariant> inv, std::string how) {
        std::string h = canonical_hash(t);
        if (!seen.insert(h).second) return;
        out.push_back({std::move(t), inv, h, std::move(how)});
    };
    if (family == Family::Mkk) {
        if (k % 2) return out;
        add(build_mkk(k, Twist::Left), std::nullopt, "close_chain(" + std::to_string(k) + ",L)");
        add(build_mkk(k, Twist::Right), std::nullopt, "close_chain(" + std::to_string(k) + ",R)");
        return out;
    }
    for (int i = 0; 2 * i <= k; ++i) {
        int j = k - i;
        if (i % 2 == 0 && j % 2 == 0) continue;
        for (auto a : {TwistChoice::A, TwistChoice::B})
            for (auto b : {TwistChoice::A, TwistChoice::B}) {
                auto t = build_mk1k(i, j, a, b);
                auto inv = partition_invariant(t);
                std::string how = "mk1k(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  (a == TwistChoice::A ? "a" : "b") + "," + (b == TwistChoice::A ? "a" : "b") + ")";
                add(std::move(t), inv, how);
            }
    }
    return out;
}

// ---- brute force -----------------------------------------------------------

namespace {

struct SearchSpace {
    Family family;
    int k = 0, g = 0;
    Triangulation base;              // cusp pairs glued, finite faces open
    std::vector<FaceSlot> faces;     // open faces
    std::vector<int> compact_slots;  // slot ids 6*tet+edge of compact edges
};

SearchSpace make_space(Family family, int k) {
    SearchSpace s;
    s.family = family;
    s.k = k;
    s.g = family == Family::Mkk ? k : k + 1;
    if (family == Family::Mk1k) s.base.add_tet(TetKind::Compact);
    int first_nc = s.base.size();
    for (int i = 0; i < 2 * k; ++i) s.base.add_tet(TetKind::NonCompact);
    for (int i = 0; i < k; ++i) glue_cusp_pair(s.base, first_nc + 2 * i, first_nc + 2 * i + 1);
    for (int x = 0; x < s.base.size(); ++x)
        for (int f = 0; f < 4; ++f)
            if (!s.base.is_glued(x, f)) s.faces.push_back({x, f});
    for (int x = 0; x < s.base.size(); ++x)
        for (int e = 0; e < 6; ++e) {
            auto v = edge_vertices(e);
            const auto& T = s.base.tet(x);
            if (!T.ideal_vertex || (v[0] != 3 && v[1] != 3)) s.compact_slots.push_back(6 * x + e);
        }
    return s;
}

double double_factorial_odd(int n) {
    double r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

// Symmetries of an untouched block (the compact tetrahedron or one cusp pair)
// as maps on global tetrahedron ids.
struct BlockSym {
    std::vector<std::pair<int, Perm4>> image;  // indexed by position in the block
};

struct Searcher {
    const SearchSpace& sp;
    std::vector<int> base_parent;
    std::vector<char> matched;
    std::vector<FaceGluing> stack;
    std::vector<int> comp, sgn;       // orientation components and signs
    std::vector<int> block;           // base block of each tetrahedron
    std::vector<std::vector<int>> block_tets;
    std::vector<int> block_type;      // 0 compact, 1 cusp pair
    std::vector<int> touched;         // finite gluings meeting the block
    std::vector<std::vector<BlockSym>> local_syms;  // per type, in block positions
    std::vector<int> face_index;      // 4*tet+face -> index into sp.faces
    std::map<std::string, Triangulation> classes;
    std::uint64_t leaves = 0, valid = 0;

    explicit Searcher(const SearchSpace& s) : sp(s) {
        int n = s.base.size();
        detail::Dsu dsu(6 * n);
        for (const auto& gl : s.base.gluings())
            for (int u = 0; u < 4; ++u)
                for (int w = u + 1; w < 4; ++w) {
                    if (u == gl.a.face || w == gl.a.face) continue;
                    dsu.unite(6 * gl.a.tet + edge_index(u, w), 6 * gl.b.tet + edge_index(gl.map[u], gl.map[w]));
                }
        base_parent.resize(6 * n);
        for (int i = 0; i < 6 * n; ++i) base_parent[i] = dsu.find(i);
        matched.assign(s.faces.size(), 0);
        face_index.assign(4 * n, -1);
        for (size_t i = 0; i < s.faces.size(); ++i) face_index[4 * s.faces[i].tet + s.faces[i].face] = int(i);
        sgn = *s.base.orientation_signs();
        comp.resize(n);
        detail::Dsu cd(n);
        for (const auto& gl : s.base.gluings()) cd.unite(gl.a.tet, gl.b.tet);
        for (int i = 0; i < n; ++i) comp[i] = cd.find(i);

        block.assign(n, -1);
        for (int x = 0; x < n; ++x) {
            if (block[x] >= 0) continue;
            int b = int(block_tets.size());
            block_tets.push_back({});
            for (int y = x; y < n; ++y)
                if (comp[y] == comp[x]) {
                    block[y] = b;
                    block_tets[b].push_back(y);
                }
            block_type.push_back(s.base.tet(x).kind == TetKind::Compact ? 0 : 1);
        }
        touched.assign(block_tets.size(), 0);

        local_syms.resize(2);
        for (int i = 0; i < 24; ++i) local_syms[0].push_back({{{0, Perm4::from_index(i)}}});
        Triangulation pair;
        pair.add_tet(TetKind::NonCompact);
        pair.add_tet(TetKind::NonCompact);
        glue_cusp_pair(pair, 0, 1);
        for (int y = 0; y < 2; ++y)
            for (int i = 0; i < 24; ++i) {
                Perm4 q = Perm4::from_index(i);
                if (q[3] != 3) continue;
                if (auto iso = propagate_iso(pair, pair, y, q))
                    local_syms[1].push_back({{{iso->tet_map[0], iso->vertex_map[0]},
                                              {iso->tet_map[1], iso->vertex_map[1]}}});
            }
    }

    // Symmetries of block b expressed on global tetrahedron ids.
    std::vector<BlockSym> syms_of(int b) const {
        std::vector<BlockSym> out;
        const auto& tets = block_tets[b];
        for (const auto& ls : local_syms[block_type[b]]) {
            BlockSym g;
            for (const auto& [pos, perm] : ls.image) g.image.push_back({tets[pos], perm});
            out.push_back(g);
        }
        return out;
    }

    static int position(const std::vector<int>& tets, int t) {
        return int(std::find(tets.begin(), tets.end(), t) - tets.begin());
    }

    // True if the gluing (fa -> fb by p) is the smallest in its orbit under the
    // symmetries of the untouched blocks it meets.
    bool orbit_minimal(FaceSlot fa, FaceSlot fb, Perm4 p) const {
        int ba = block[fa.tet], bb = block[fb.tet];
        bool fresh_a = touched[ba] == 0, fresh_b = touched[bb] == 0;
        std::pair<int, int> key{face_index[4 * fb.tet + fb.face], p.index()};
        std::vector<BlockSym> ha, hb;
        BlockSym id_a, id_b;
        for (int t : block_tets[ba]) id_a.image.push_back({t, Perm4()});
        for (int t : block_tets[bb]) id_b.image.push_back({t, Perm4()});
        if (fresh_a) {
            for (auto& g : syms_of(ba)) {
                auto [t, v] = g.image[position(block_tets[ba], fa.tet)];
                if (t == fa.tet && v[fa.face] == fa.face) ha.push_back(g);
            }
        } else {
            ha.push_back(id_a);
        }
        if (ba == bb) {
            for (const auto& g : ha) {
                auto [tb, vb] = g.image[position(block_tets[bb], fb.tet)];
                Perm4 va = g.image[position(block_tets[ba], fa.tet)].second;
                std::pair<int, int> k2{face_index[4 * tb + vb[fb.face]], (vb * p * va.inverse()).index()};
                if (k2 < key) return false;
            }
            return true;
        }
        if (fresh_b) hb = syms_of(bb);
        else hb.push_back(id_b);
        for (const auto& ga : ha) {
            Perm4 va = ga.image[position(block_tets[ba], fa.tet)].second;
            for (const auto& gb : hb) {
                auto [tb, vb] = gb.image[position(block_tets[bb], fb.tet)];
                std::pair<int, int> k2{face_index[4 * tb + vb[fb.face]], (vb * p * va.inverse()).index()};
                if (k2 < key) return false;
            }
        }
        return true;
    }

    bool lowest_fresh_block(int b, int other) const {
        if (touched[b] || b == other) return true;
        for (int c = 0; c < b; ++c)
            if (c != other && !touched[c] && block_type[c] == block_type[b]) return false;
        return true;
    }

    bool compact_connected() {
        detail::Dsu dsu(int(base_parent.size()));
        dsu.parent = base_parent;
        for (const auto& gl : stack)
            for (int u = 0; u < 4; ++u)
                for (int w = u + 1; w < 4; ++w) {
                    if (u == gl.a.face || w == gl.a.face) continue;
                    dsu.unite(6 * gl.a.tet + edge_index(u, w), 6 * gl.b.tet + edge_index(gl.map[u], gl.map[w]));
                }
        int r = dsu.find(sp.compact_slots.front());
        for (int s : sp.compact_slots)
            if (dsu.find(s) != r) return false;
        return true;
    }

    void leaf() {
        ++leaves;
        if (!compact_connected()) return;
        Triangulation t = sp.base;
        for (const auto& gl : stack) t.glue(gl.a.tet, gl.a.face, gl.b.tet, gl.b.face, gl.map);
        t.orient();
        if (!validate_minimal(t, sp.g, sp.k).pass()) return;
        ++valid;
        t.meta = Meta{sp.g, sp.k};
        for (const auto& [h, rep] : classes)
            if (is_isomorphic(t, rep)) return;
        std::string h = canonical_hash(t);
        classes.try_emplace(h, std::move(t));
    }

    void dfs() {
        int i = -1;
        for (size_t a = 0; a < matched.size(); ++a)
            if (!matched[a]) {
                i = int(a);
                break;
            }
        if (i < 0) {
            leaf();
            return;
        }
        matched[i] = 1;
        FaceSlot fa = sp.faces[i];
        int ba = block[fa.tet];
        for (size_t j = i + 1; j < matched.size(); ++j) {
            if (matched[j]) continue;
            FaceSlot fb = sp.faces[j];
            int bb = block[fb.tet];
            if (!lowest_fresh_block(bb, ba)) continue;
            matched[j] = 1;
            for (int idx = 0; idx < 24; ++idx) {
                Perm4 p = Perm4::from_index(idx);
                if (p[fa.face] != fb.face) continue;
                int ca = comp[fa.tet], cb = comp[fb.tet];
                if (ca == cb && p.sign() * sgn[fa.tet] * sgn[fb.tet] != -1) continue;
                if (!orbit_minimal(fa, fb, p)) continue;
                auto saved_comp = comp;
                auto saved_sgn = sgn;
                if (ca != cb) {
                    int flip = -p.sign() * sgn[fa.tet] * sgn[fb.tet];
                    for (size_t x = 0; x < comp.size(); ++x)
                        if (comp[x] == cb) {
                            comp[x] = ca;
                            sgn[x] *= flip;
                        }
                }
                ++touched[ba];
                ++touched[bb];
                stack.push_back({fa, fb, p});
                dfs();
                stack.pop_back();
                --touched[ba];
                --touched[bb];
                comp = saved_comp;
                sgn = saved_sgn;
            }
            matched[j] = 0;
        }
        matched[i] = 0;
    }
};

}  // namespace

double brute_force_estimate(Family family, int k) {
    SearchSpace s = make_space(family, k);
    int m = int(s.faces.size()) / 2;
    double est = double_factorial_odd(2 * m - 1) * 6;
    for (int i = 1; i < m; ++i) est *= 3;
    return est;
}

BruteForceResult brute_force_census(Family family, int k, double budget) {
    if (k < 1) throw ValidationError("InvalidK", "k must be positive");
    BruteForceResult res;
    res.estimate = brute_force_estimate(family, k);
    if (res.estimate > budget)
        throw SearchBudgetExceeded("search needs about " + std::to_string(res.estimate) + " candidates, budget " +
                                   std::to_string(budget));
    SearchSpace sp = make_space(family, k);
    Searcher s(sp);
    s.dfs();
    res.candidates = s.leaves;
    res.valid = s.valid;
    for (auto& [h, t] : s.classes) {
        std::optional<PartitionInvariant> inv;
        if (family == Family::Mk1k) inv = partition_invariant(t);
        res.classes.push_back({t, inv, h, "brute force"});
    }
    res.count = int(res.classes.size());
    return res;
}

Connectivity edge_identification_check(Parity first, Parity second) {
    // vertices E2, E3, E4, E5 -> 0..3
    std::vector<std::pair<int, int>> edges;
    if (first == Parity::Odd) edges.insert(edges.end(), {{2, 0}, {3, 1}});
    else edges.insert(edges.end(), {{2, 1}, {3, 0}});
    if (second == Parity::Odd) edges.insert(edges.end(), {{2, 3}, {0, 1}});
    else edges.insert(edges.end(), {{2, 1}, {3, 0}});
    detail::Dsu d(4);
    for (auto [a, b] : edges) d.unite(a, b);
    for (int v = 1; v < 4; ++v)
        if (d.find(v) != d.find(0)) return Connectivity::Disconnected;
    return Connectivity::Connected;
}

}  // namespace cuspmin
