// Command-line front end: census, invariants, volume, dehnfill, spine, verify.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuspmin/census.hpp"
#include "cuspmin/errors.hpp"
#include "cuspmin/exactnum.hpp"
#include "cuspmin/geometry.hpp"
#include "cuspmin/spine.hpp"
#include "cuspmin/verify.hpp"

using namespace cuspmin;
using json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string k = "2";
    std::string family = "mkk";
    std::vector<std::string> slopes;
    std::vector<int> cusps;
    std::string convention = "theorem";
    std::string format;
    std::string out;
    std::uint64_t seed = 20240611;
    double budget = 1e8;
    int precision = 10;
    std::vector<std::string> oracle;
    int member = 0;
    bool quick = false;
};

// "1..8", "2,4,6", "2..24:2" or any comma-separated mix
std::vector<int> parse_range(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            auto dots = item.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoi(item));
                continue;
            }
            int step = 1;
            std::string hi = item.substr(dots + 2);
            if (auto c = hi.find(':'); c != std::string::npos) {
                step = std::stoi(hi.substr(c + 1));
                hi = hi.substr(0, c);
            }
            int a = std::stoi(item.substr(0, dots)), b = std::stoi(hi);
            if (step < 1 || b < a) throw std::invalid_argument("");
            for (int k = a; k <= b; k += step) out.push_back(k);
        } catch (const std::logic_error&) {
            throw ValidationError("BadRange", "cannot parse k range '" + s + "'");
        }
    }
    if (out.empty()) throw ValidationError("BadRange", "empty k range");
    return out;
}

Slope parse_slope(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return {std::stoi(s), 1};
        return {std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1))};
    } catch (const std::logic_error&) {
        throw ValidationError("BadSlope", "cannot parse slope '" + s + "'");
    }
}

std::string slope_str(Slope s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f == a) return;
    throw ValidationError("BadFormat", "format '" + f + "' is not available for this command");
}

int oracle_upto(const Config& c) {
    if (c.oracle.empty() || c.oracle[0] == "none") return 0;
    if (c.oracle[0] == "upto" && c.oracle.size() == 2) {
        try {
            return std::stoi(c.oracle[1]);
        } catch (const std::logic_error&) {
        }
    }
    throw ValidationError("BadOracle", "use --oracle upto N or --oracle none");
}

std::string run_census(const Config& c) {
    Family fam = parse_family(c.family);
    int upto = oracle_upto(c);
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    std::ostringstream os;
    json all = json::array();
    if (fmt == "csv") os << "family,k,count,oracle_count,oracle_agrees,classes\n";
    for (int k : parse_range(c.k)) {
        auto members = enumerate_family(fam, k);
        std::string classes;
        json jm = json::array();
        for (const auto& m : members) {
            std::string inv = m.invariant ? "(" + std::to_string(m.invariant->i) + "," + std::to_string(m.invariant->j) + ")" : "-";
            classes += (classes.empty() ? "" : ";") + inv;
            json e = {{"hash", m.canonical_hash}, {"construction", m.construction}};
            if (m.invariant) e["partition"] = {m.invariant->i, m.invariant->j};
            jm.push_back(e);
        }
        std::optional<BruteForceResult> bf;
        bool agrees = true;
        if (k <= upto) {
            bf = brute_force_census(fam, k, c.budget);
            std::set<std::string> a, b;
            for (const auto& m : members) a.insert(m.canonical_hash);
            for (const auto& m : bf->classes) b.insert(m.canonical_hash);
            agrees = a == b;
            if (!agrees)
                throw CrossCheckError("brute-force census disagrees with the construction at k = " + std::to_string(k));
        }
        if (fmt == "csv") {
            os << family_name(fam) << "," << k << "," << members.size() << ",";
            if (bf) os << bf->count << "," << (agrees ? "yes" : "no");
            else os << ",";
            os << "," << classes << "\n";
        } else {
            json row = {{"family", family_name(fam)}, {"k", k}, {"count", members.size()}, {"members", jm}};
            if (bf) row["oracle"] = {{"count", bf->count}, {"candidates", bf->candidates}, {"agrees", agrees}};
            all.push_back(row);
        }
    }
    if (fmt == "json") os << all.dump(2) << "\n";
    return os.str();
}

std::string run_invariants(const Config& c) {
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    std::ostringstream os;
    if (fmt == "csv")
        os << "k,trace_field_degree,adjoint_field_degree,disc_radicand,integral_traces,quasi_arithmetic,arithmetic,"
              "resultant_product,relative_norm\n";
    json all = json::array();
    for (int k : parse_range(c.k)) {
        auto v = arithmetic_verdict(k);
        if (fmt == "csv") {
            os << k << "," << v.trace_field_degree << "," << v.adjoint_field_degree << "," << v.discriminant_class_radicand
               << "," << v.integral_traces << "," << v.quasi_arithmetic << "," << v.arithmetic << ","
               << v.norms.cyclotomic.get_str() << "," << v.norms.relative << "\n";
        } else {
            all.push_back(json::parse(verdict_to_json(v)));
        }
    }
    if (fmt == "json") os << all.dump(2) << "\n";
    return os.str();
}

std::string run_volume(const Config& c) {
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    if (c.precision < 1 || c.precision > 17) throw ValidationError("BadPrecision", "precision must be in 1..17");
    auto rows = volume_table(parse_range(c.k));
    if (fmt == "csv") return volume_csv(rows, c.precision);
    json all = json::array();
    for (const auto& r : rows) {
        auto v = volume_Mkk(r.k);
        all.push_back({{"k", r.k},
                       {"vol_closed", r.closed},
                       {"vol_ushijima", r.ushijima},
                       {"lower_bound", r.lower},
                       {"upper_bound", r.upper},
                       {"abs_diff", r.diff},
                       {"Z1", {v.Z1.real(), v.Z1.imag()}},
                       {"Z2", {v.Z2.real(), v.Z2.imag()}},
                       {"residue", v.residue}});
    }
    return all.dump(2) + "\n";
}

std::string run_dehnfill(const Config& c) {
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    SlopeConvention conv;
    if (c.convention == "theorem") conv = SlopeConvention::Theorem;
    else if (c.convention == "proof") conv = SlopeConvention::Proof;
    else throw ValidationError("BadConvention", "convention must be theorem or proof");
    std::vector<Slope> slopes;
    for (const auto& s : c.slopes) slopes.push_back(parse_slope(s));
    if (slopes.empty()) slopes = conv == SlopeConvention::Theorem ? theorem_slopes() : std::vector<Slope>{model_slope()};

    std::ostringstream os;
    json all = json::array();
    if (fmt == "csv") os << "k,cusp,slope,normal,partition,isomorphic_to_trivial,V,E,F\n";
    for (int k : parse_range(c.k)) {
        auto m = build_mkk(k, Twist::Left);
        auto target = k >= 2 ? build_mk1k(0, k - 1, TwistChoice::A, TwistChoice::A) : Triangulation{};
        std::vector<int> cusps = c.cusps;
        if (cusps.empty())
            for (int i = 0; i < k; ++i) cusps.push_back(i);
        for (int cusp : cusps)
            for (auto s : slopes) {
                auto f = dehn_fill(m, cusp, s, conv);
                auto p = partition_invariant(f.tri);
                bool iso = bool(is_isomorphic(f.tri, target));
                const auto& tr = f.transcript;
                const auto& n = f.curve.normal;
                if (fmt == "csv") {
                    os << k << "," << cusp << "," << slope_str(s) << "," << n[0] << " " << n[1] << " " << n[2] << ",("
                       << p.i << " " << p.j << ")," << (iso ? "yes" : "no") << "," << tr.final_vertices << ","
                       << tr.final_edges << "," << tr.final_faces << "\n";
                } else {
                    all.push_back({{"k", k},
                                   {"cusp", cusp},
                                   {"slope", slope_str(s)},
                                   {"normal", {n[0], n[1], n[2]}},
                                   {"partition", {p.i, p.j}},
                                   {"isomorphic_to_trivial", iso},
                                   {"intersection_points", tr.intersection_points},
                                   {"J_faces", tr.complementary_faces.size()},
                                   {"final", {tr.final_vertices, tr.final_edges, tr.final_faces}}});
                }
            }
    }
    if (fmt == "json") os << all.dump(2) << "\n";
    return os.str();
}

std::string spine_dot(const SpineComplex& s) {
    std::ostringstream os;
    os << "graph spine {\n  node [shape=circle];\n";
    for (size_t v = 0; v < s.vertices.size(); ++v)
        if (s.vertices[v].alive) os << "  v" << v << " [label=\"" << s.vertices[v].label << "\"];\n";
    for (size_t e = 0; e < s.edges.size(); ++e)
        if (s.edges[e].alive)
            os << "  v" << s.edges[e].tail << " -- v" << s.edges[e].head << " [label=\"" << s.edges[e].label << "\"];\n";
    os << "}\n";
    return os.str();
}

// Regular 6g-gon, one sector per diamond, vertices labeled by spine vertex.
std::string big_face_svg(const SpineComplex& s) {
    auto w = big_face_word(s);
    const int n = int(w.vertices.size());
    const double R = 260, cx = 320, cy = 320, pi = std::numbers::pi;
    auto pt = [&](double r, double t) { return std::pair{cx + r * std::cos(t), cy - r * std::sin(t)}; };
    auto ang = [&](double i) { return pi / 2 - 2 * pi * i / n; };
    std::ostringstream os;
    char buf[160];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n<polygon points=\"";
    for (int i = 0; i < n; ++i) {
        auto [x, y] = pt(R, ang(i));
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", x, y);
        os << buf;
    }
    os << "\"/>\n";
    for (int i = 0; i < n; ++i) {
        auto [x, y] = pt(R, ang(i));
        std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#bbb\"/>\n", cx, cy, x, y);
        os << buf;
    }
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int i = 0; i < n; ++i) {
        auto [x, y] = pt(R + 16, ang(i));
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">v%d</text>\n", x, y + 4, w.vertices[i]);
        os << buf;
        if (i < int(w.diamonds.size())) {
            auto [dx, dy] = pt(R * 0.72, ang(i + 0.5));
            std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">", dx, dy + 4);
            os << buf << w.diamonds[i] << "</text>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string run_spine(const Config& c) {
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "dot", "svg"});
    auto ks = parse_range(c.k);
    if (ks.size() != 1) throw ValidationError("BadRange", "spine takes a single k");
    auto members = enumerate_family(parse_family(c.family), ks[0]);
    if (c.member < 0 || c.member >= int(members.size()))
        throw ValidationError("NoSuchMember", "family has " + std::to_string(members.size()) + " members at k = " +
                                                  std::to_string(ks[0]));
    auto s = dualize(members[c.member].tri);
    if (fmt == "json") return spine_to_json(s) + "\n";
    if (fmt == "dot") return spine_dot(s);
    return big_face_svg(s);
}

int run_verify(const Config& c, std::string& text) {
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "json"});
    auto results = run_acceptance({c.quick, c.seed});
    bool ok = true;
    json all = json::array();
    std::ostringstream os;
    for (const auto& r : results) {
        ok = ok && r.pass;
        if (fmt == "json")
            all.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        else
            os << format_line(r, false) << "\n";
    }
    text = fmt == "json" ? all.dump(2) + "\n" : os.str();
    return ok ? 0 : 3;
}

void emit_error(const std::string& kind, const std::string& msg) {
    json e = {{"error", kind}, {"message", msg}};
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuspmin: minimal triangulations with geodesic boundary and their invariants"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "output format: json, csv, dot or svg");
        s->add_option("--out", c.out, "write to this file instead of stdout");
    };
    auto* census = app.add_subcommand("census", "enumerate a family and optionally cross-check by brute force");
    census->add_option("--k", c.k, "k or range, e.g. 1..8");
    census->add_option("--family", c.family, "mkk or mk1k");
    census->add_option("--oracle", c.oracle, "upto N: brute-force cross-check for k <= N")->expected(1, 2);
    census->add_option("--budget", c.budget, "brute-force leaf budget");
    common(census);

    auto* inv = app.add_subcommand("invariants", "arithmetic verdicts for even k");
    inv->add_option("--k", c.k, "even k or range");
    common(inv);

    auto* vol = app.add_subcommand("volume", "volume table of M_k");
    vol->add_option("--k", c.k, "even k or range");
    vol->add_option("--precision", c.precision, "digits after the decimal point");
    common(vol);

    auto* fill = app.add_subcommand("dehnfill", "fill cusps of M_k and identify the result");
    fill->add_option("--k", c.k, "even k or range");
    fill->add_option("--slope", c.slopes, "p/q, repeatable; default all theorem slopes");
    fill->add_option("--cusp", c.cusps, "cusp index, repeatable; default all");
    fill->add_option("--convention", c.convention, "theorem or proof");
    common(fill);

    auto* spine = app.add_subcommand("spine", "dual spine of a census member");
    spine->add_option("--k", c.k, "k");
    spine->add_option("--family", c.family, "mkk or mk1k");
    spine->add_option("--member", c.member, "index within the family listing");
    common(spine);

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_flag("--quick", c.quick, "fewer random spot checks");
    verify->add_option("--seed", c.seed, "seed for random spot checks");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("UsageError", e.what());
        return 2;
    }

    int status = 0;
    std::string text;
    try {
        if (*census) text = run_census(c);
        else if (*inv) text = run_invariants(c);
        else if (*vol) text = run_volume(c);
        else if (*fill) text = run_dehnfill(c);
        else if (*spine) text = run_spine(c);
        else status = run_verify(c, text);
    } catch (const ValidationError& e) {
        emit_error(e.kind(), e.what());
        return 2;
    } catch (const Error& e) {
        emit_error(e.kind(), e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("InternalError", e.what());
        return 3;
    }

    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!(f << text)) {
            emit_error("IOError", "cannot write " + c.out);
            return 2;
        }
    }
    return status;
}
