#include "conelab/cli.hpp"

#include "conelab/errors.hpp"
#include "conelab/io.hpp"
#include "conelab/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace conelab {

std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(part));
                continue;
            }
            int lo = std::stoi(part.substr(0, dots));
            std::string hi_text = part.substr(dots + 2);
            int hi = hi_text == "m" ? kMaxRays : std::stoi(hi_text);
            if (hi < lo) throw std::invalid_argument("empty range '" + part + "'");
            for (int i = lo; i <= hi; ++i) out.push_back(i);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad integer range '" + text + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty integer range");
    return out;
}

namespace {

struct Source {
    std::string map_file;
    std::string family_file;
    std::string spec;
    bool given() const { return !map_file.empty() || !family_file.empty() || !spec.empty(); }
};

void add_source(CLI::App* app, Source& s) {
    app->add_option("--map", s.map_file, "map JSON file");
    app->add_option("--family", s.family_file, "family spec JSON file");
    app->add_option("--spec", s.spec, "inline family spec JSON");
}

Tolerance env_tolerance() {
    Tolerance tol;
    if (const char* t = std::getenv("CONELAB_TOL")) {
        char* end = nullptr;
        double v = std::strtod(t, &end);
        if (end == t || *end != '\0' || !(v > 0)) throw std::invalid_argument("CONELAB_TOL must be a positive number");
        tol.eps_incidence = v;
    }
    return tol;
}

bool tolerance_overridden() { return std::getenv("CONELAB_TOL") != nullptr; }

ConeMap with_tolerance(const ConeMap& map) {
    if (!tolerance_overridden()) return map;
    Tolerance tol = map.cone().tol();
    tol.eps_incidence = env_tolerance().eps_incidence;
    return verify_map(map.matrix(), build_cone(map.cone().rays(), tol));
}

FamilySpec load_spec(const Source& s) {
    if (!s.family_file.empty()) return family_from_json(read_json_file(s.family_file));
    try {
        return family_from_json(Json::parse(s.spec));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("bad --spec JSON: ") + e.what());
    }
}

ConeMap load_map(const Source& s) {
    if (!s.map_file.empty()) {
        std::filesystem::path p(s.map_file);
        Json j = read_json_file(p);
        if (tolerance_overridden() && j.contains("cone") && j["cone"].is_object())
            j["cone"]["tolerance"]["eps_incidence"] = env_tolerance().eps_incidence;
        return with_tolerance(map_from_json(j, p.parent_path()));
    }
    if (!s.given()) throw std::invalid_argument("give one of --map, --family, --spec");
    return with_tolerance(build_family(load_spec(s)));
}

std::string csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

Json digraph_json(const Digraph& d) {
    Json arcs = Json::array();
    for (auto [u, v] : d.arcs()) arcs.push_back(Json::array({u + 1, v + 1}));
    Json j{{"vertices", d.size()}, {"arcs", arcs}};
    auto g = girth(d);
    j["girth"] = g ? Json(*g) : Json(nullptr);
    j["strongly_connected"] = strongly_connected(d);
    j["cycle_gcd"] = cycle_gcd(d);
    j["primitive"] = is_primitive_digraph(d);
    j["exponent"] = is_primitive_digraph(d) ? Json(digraph_exponent(d)) : Json(nullptr);
    std::optional<int> fig;
    if (d.size() >= 3) {
        if (matches_figure(d, 1)) fig = 1;
        else if (matches_figure(d, 2)) fig = 2;
    }
    j["figure_match"] = fig ? Json(*fig) : Json(nullptr);
    return j;
}

void show_cone(std::ostream& out, const PolyhedralCone& k) {
    out << "dim " << k.dim() << ", " << k.num_rays() << " extreme rays, " << k.facets().size() << " facets, "
        << (k.mode() == ScalarMode::Exact ? "rational" : "float64") << "\n";
    auto fmt_vec = [](const Vector& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            if (v[i].is_exact()) s += v[i].to_string();
            else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.12g", v[i].d());
                s += buf;
            }
        }
        return s + ")";
    };
    for (int i = 0; i < k.num_rays(); ++i) out << "  x" << i + 1 << " = " << fmt_vec(k.ray(i)) << "\n";
    for (std::size_t f = 0; f < k.facets().size(); ++f) {
        out << "  facet " << f + 1 << ": rays {";
        bool first = true;
        for (int i : members(k.facets()[f].incidence)) {
            out << (first ? "" : ",") << i + 1;
            first = false;
        }
        out << "} normal " << fmt_vec(k.facets()[f].normal) << "\n";
    }
    auto parts = decompose(k);
    out << "summands: " << parts.size() << "\n";
    if (k.num_rays() == k.dim() + 1) {
        auto mc = classify_minimal(k);
        out << "minimal cone: type (" << mc.p << "," << mc.q << "), d=" << mc.d
            << (mc.balanced ? ", balanced" : ", unbalanced") << (mc.decomposable ? ", decomposable" : "") << "\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"conelab: exponents of cone-preserving maps"};
    app.require_subcommand(1);

    auto* cone = app.add_subcommand("cone", "build or inspect a polyhedral cone");
    cone->require_subcommand(1);
    auto* cone_build = cone->add_subcommand("build", "canonicalize generators and print the cone JSON");
    std::string gen_file, out_file, name;
    Source cone_src;
    cone_build->add_option("--generators", gen_file, "cone JSON with generators");
    add_source(cone_build, cone_src);
    cone_build->add_option("-o,--output", out_file, "write to a file instead of stdout");
    cone_build->add_option("--name", name, "name stored in the output");
    auto* cone_show = cone->add_subcommand("show", "print rays, facets and structure");
    std::string show_file;
    Source show_src;
    cone_show->add_option("file", show_file, "cone JSON");
    add_source(cone_show, show_src);

    auto* map = app.add_subcommand("map", "cone-preserving maps");
    map->require_subcommand(1);
    auto* map_verify = map->add_subcommand("verify", "check A K in K and print the access digraph");
    std::string map_file;
    map_verify->add_option("file", map_file, "map JSON")->required();

    auto* exponent = app.add_subcommand("exponent", "exponent report as JSON");
    Source exp_src;
    bool serial = false;
    add_source(exponent, exp_src);
    exponent->add_flag("--serial", serial, "compute local exponents serially");

    auto* digraph = app.add_subcommand("digraph", "access digraph analytics");
    Source dg_src;
    int figure = 0, dg_m = 0, cycle = 0;
    add_source(digraph, dg_src);
    digraph->add_option("--figure", figure, "template digraph 1 or 2")->check(CLI::IsMember({1, 2}));
    digraph->add_option("--m", dg_m, "template size");
    digraph->add_option("--cycle", cycle, "pure cycle on this many vertices");

    auto* verify = app.add_subcommand("verify", "run a verification suite; CSV table");
    std::string suite, n_text, m_text;
    SuiteOptions sopt;
    verify->add_option("suite", suite, "bounds|minimal|ktheta|highdim|symfun|all")->required();
    verify->add_option("--n", n_text, "range such as 3..7");
    verify->add_option("--m", m_text, "range such as 3..9");
    verify->add_option("--grid", sopt.grid, "theta values per interval");
    verify->add_option("--random", sopt.random_count, "random primitive maps in the bounds suite");
    verify->add_option("--seed", sopt.seed, "seed for randomized checks");
    verify->add_option("--jobs", sopt.jobs, "concurrent cells");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep; CSV rows in grid order");
    std::string family, sw_m, sw_n, c_list, variant_list;
    SweepOptions wopt;
    bool all_variants = false;
    sweep->add_option("family", family, "highdim|ktheta|minimal|simplicial|regular_polygon|figure2")->required();
    sweep->add_option("--m", sw_m, "range of m");
    sweep->add_option("--n", sw_n, "range of n (a..m allowed)");
    sweep->add_option("--theta-grid", wopt.theta_grid, "theta values per interval");
    sweep->add_option("--c", c_list, "comma-separated c values (simplicial)");
    sweep->add_flag("--all-variants", all_variants, "every minimal-cone variant");
    sweep->add_option("--variant", variant_list, "comma-separated minimal-cone variants");
    sweep->add_option("--jobs", wopt.jobs, "concurrent cells");
    std::uint64_t sweep_seed = 0;
    sweep->add_option("--seed", sweep_seed, "accepted for symmetry with verify");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        env_tolerance();
        if (cone_build->parsed()) {
            PolyhedralCone k;
            if (!gen_file.empty()) {
                Json j = read_json_file(gen_file);
                if (tolerance_overridden()) j["tolerance"]["eps_incidence"] = env_tolerance().eps_incidence;
                k = cone_from_json(j);
                if (name.empty()) name = j.value("name", "");
            } else if (cone_src.given()) {
                k = cone_src.map_file.empty() ? build_family_cone(load_spec(cone_src)) : load_map(cone_src).cone();
            } else {
                throw std::invalid_argument("give --generators, --map, --family or --spec");
            }
            std::string text = cone_to_json(k, name).dump(2) + "\n";
            if (out_file.empty()) out << text;
            else std::ofstream(out_file) << text;
            return 0;
        }
        if (cone_show->parsed()) {
            if (!show_file.empty()) show_cone(out, cone_from_json(read_json_file(show_file)));
            else if (show_src.given())
                show_cone(out, show_src.map_file.empty() ? build_family_cone(load_spec(show_src)) : load_map(show_src).cone());
            else throw std::invalid_argument("give a cone file or a family");
            return 0;
        }
        if (map_verify->parsed()) {
            Source s;
            s.map_file = map_file;
            ConeMap cm = load_map(s);
            Json faces = Json::array();
            for (RaySet f : cm.image_faces()) {
                Json a = Json::array();
                for (int i : members(f)) a.push_back(i + 1);
                faces.push_back(a);
            }
            out << Json{{"valid", true}, {"m_A", cm.minpoly_degree()}, {"image_faces", faces},
                        {"digraph", digraph_json(cm.digraph())}}.dump(2)
                << "\n";
            return 0;
        }
        if (exponent->parsed()) {
            ConeMap cm = load_map(exp_src);
            out << report_to_json(exponent_report(cm, serial ? Execution::Serial : Execution::Parallel)).dump(2) << "\n";
            return 0;
        }
        if (digraph->parsed()) {
            Digraph d;
            if (figure) {
                if (dg_m < 3) throw std::invalid_argument("--figure needs --m >= 3");
                d = figure == 1 ? figure1(dg_m) : figure2(dg_m);
            } else if (cycle) {
                d = cycle_digraph(cycle);
            } else {
                d = load_map(dg_src).digraph();
            }
            out << digraph_json(d).dump(2) << "\n";
            return 0;
        }
        if (verify->parsed()) {
            if (!n_text.empty()) sopt.n_range = parse_int_range(n_text);
            if (!m_text.empty()) sopt.m_range = parse_int_range(m_text);
            auto rows = run_suite(suite, sopt);
            out << "suite,instance,value,expected,pass\n";
            bool ok = true;
            for (const auto& r : rows) {
                out << csv(r.suite) << ',' << csv(r.instance) << ',' << csv(r.value) << ',' << csv(r.expected) << ','
                    << (r.pass ? "pass" : "FAIL") << "\n";
                ok = ok && r.pass;
            }
            return ok ? 0 : 1;
        }
        if (sweep->parsed()) {
            if (!sw_m.empty()) wopt.m_range = parse_int_range(sw_m);
            if (!sw_n.empty() && sw_n != "3..m") wopt.n_range = parse_int_range(sw_n);
            if (!c_list.empty()) {
                std::stringstream ss(c_list);
                for (std::string c; std::getline(ss, c, ',');) wopt.c_values.push_back(c);
            }
            if (!variant_list.empty()) {
                wopt.all_variants = false;
                std::stringstream ss(variant_list);
                for (std::string v; std::getline(ss, v, ',');) wopt.variants.push_back(v);
            }
            if (all_variants) wopt.all_variants = true;
            auto rows = run_sweep(family, wopt);
            out << "family,m,n,params,gamma,predicted,min_bound,tight_bound,probe,pass,note\n";
            bool ok = true;
            for (const auto& r : rows) {
                out << csv(r.family) << ',' << r.m << ',' << r.n << ',' << csv(r.params) << ','
                    << (r.gamma ? std::to_string(*r.gamma) : (r.note.empty() ? "inf" : "")) << ',' << csv(r.predicted)
                    << ',' << (r.min_bound ? std::to_string(*r.min_bound) : "") << ',' << csv(r.tight_bound) << ','
                    << csv(r.probe) << ',' << (r.pass ? "pass" : "FAIL") << ',' << csv(r.note) << "\n";
                ok = ok && r.pass;
            }
            return ok ? 0 : 1;
        }
    } catch (const ConeError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) { return run(args, out, err); }

}  // namespace conelab
