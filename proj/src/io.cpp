#include "conelab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace conelab {

Json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return s.q().get_str();
    return s.d();
}

Scalar scalar_from_json(const Json& j, ScalarMode mode) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), mode);
    if (j.is_number_integer()) return Scalar::from_int(j.get<long>(), mode);
    if (j.is_number()) {
        double d = j.get<double>();
        if (mode == ScalarMode::Float) return Scalar::real(d);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        return Scalar::parse(buf, mode);
    }
    throw std::invalid_argument("expected a number or a rational string");
}

namespace {

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(scalar_to_json(x));
    return a;
}

Json tolerance_json(const Tolerance& t) {
    return Json{{"eps_incidence", t.eps_incidence}, {"eps_rank", t.eps_rank}, {"eps_root", t.eps_root}};
}

ScalarMode parse_mode(const Json& j) {
    std::string s = j.value("scalar", "rational");
    if (s == "rational") return ScalarMode::Exact;
    if (s == "float64") return ScalarMode::Float;
    throw std::invalid_argument("scalar must be 'rational' or 'float64'");
}

Json rayset_json(RaySet s) {
    Json a = Json::array();
    for (int i : members(s)) a.push_back(i + 1);
    return a;
}

}  // namespace

Json cone_to_json(const PolyhedralCone& k, const std::string& name) {
    Json j;
    if (!name.empty()) j["name"] = name;
    j["dim"] = k.dim();
    j["scalar"] = k.mode() == ScalarMode::Exact ? "rational" : "float64";
    Json gens = Json::array();
    for (const auto& r : k.rays()) gens.push_back(vector_json(r));
    j["generators"] = gens;
    j["tolerance"] = tolerance_json(k.tol());
    Json facets = Json::array();
    for (const auto& f : k.facets()) facets.push_back(Json{{"normal", vector_json(f.normal)}, {"rays", rayset_json(f.incidence)}});
    j["derived"] = Json{{"num_rays", k.num_rays()}, {"num_facets", k.facets().size()}, {"facets", facets}};
    return j;
}

PolyhedralCone cone_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("generators")) throw std::invalid_argument("cone JSON needs 'generators'");
    const ScalarMode mode = parse_mode(j);
    Tolerance tol;
    if (j.contains("tolerance")) {
        const auto& t = j["tolerance"];
        tol.eps_incidence = t.value("eps_incidence", tol.eps_incidence);
        tol.eps_rank = t.value("eps_rank", tol.eps_rank);
        tol.eps_root = t.value("eps_root", tol.eps_root);
    }
    tol.validate();
    std::vector<Vector> gens;
    for (const auto& g : j["generators"]) {
        Vector v;
        for (const auto& x : g) v.push_back(scalar_from_json(x, mode));
        gens.push_back(std::move(v));
    }
    if (j.contains("dim"))
        for (const auto& g : gens)
            if (static_cast<int>(g.size()) != j["dim"].get<int>())
                throw std::invalid_argument("generator length does not match 'dim'");
    return build_cone(gens, mode, tol);
}

Json map_to_json(const ConeMap& map, const std::string& name) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < map.matrix().rows(); ++i) rows.push_back(vector_json(map.matrix().row(i)));
    return Json{{"matrix", rows}, {"cone", cone_to_json(map.cone(), name)}};
}

ConeMap map_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object() || !j.contains("matrix") || !j.contains("cone"))
        throw std::invalid_argument("map JSON needs 'matrix' and 'cone'");
    PolyhedralCone k = j["cone"].is_string() ? cone_from_json(read_json_file(base_dir / j["cone"].get<std::string>()))
                                             : cone_from_json(j["cone"]);
    std::vector<Vector> rows;
    for (const auto& r : j["matrix"]) {
        Vector v;
        for (const auto& x : r) v.push_back(scalar_from_json(x, k.mode()));
        rows.push_back(std::move(v));
    }
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw std::invalid_argument("matrix must be square");
    return verify_map(Matrix::from_rows(rows), k);
}

namespace {

std::optional<std::string> text_param(const Json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    const auto& v = j[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        // Prefer the short decimal when it round-trips, so 0.3 stays 3/10.
        char shortbuf[40];
        for (int prec = 1; prec <= 17; ++prec) {
            std::snprintf(shortbuf, sizeof shortbuf, "%.*g", prec, v.get<double>());
            if (std::strtod(shortbuf, nullptr) == v.get<double>()) return std::string(shortbuf);
        }
        return std::string(buf);
    }
    throw std::invalid_argument(std::string("parameter '") + key + "' must be a number or string");
}

}  // namespace

FamilySpec family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family")) throw std::invalid_argument("family spec needs 'family'");
    FamilySpec s;
    s.family = j["family"].get<std::string>();
    s.m = j.value("m", 0);
    s.n = j.value("n", 0);
    if (j.contains("variant")) s.variant = j["variant"].get<std::string>();
    if (j.contains("theta")) s.theta = j["theta"].get<double>();
    s.c = text_param(j, "c");
    s.alpha = text_param(j, "alpha");
    s.beta = text_param(j, "beta");
    if (j.contains("base")) s.base = std::make_shared<const FamilySpec>(family_from_json(j["base"]));
    return s;
}

Json family_to_json(const FamilySpec& s) {
    Json j{{"family", s.family}};
    if (s.m) j["m"] = s.m;
    if (s.n) j["n"] = s.n;
    if (s.variant) j["variant"] = *s.variant;
    if (s.theta) j["theta"] = *s.theta;
    if (s.c) j["c"] = *s.c;
    if (s.alpha) j["alpha"] = *s.alpha;
    if (s.beta) j["beta"] = *s.beta;
    if (s.base) j["base"] = family_to_json(*s.base);
    return j;
}

Json report_to_json(const ExponentReport& r) {
    Json j;
    j["primitive"] = r.primitive;
    j["m"] = r.m;
    j["n"] = r.n;
    j["m_A"] = r.m_a;
    j["gamma"] = r.gamma ? Json(*r.gamma) : Json(nullptr);
    Json locals = Json::array();
    for (auto e : r.local_exponents) locals.push_back(e ? Json(*e) : Json(nullptr));
    j["local_exponents"] = locals;
    j["girth"] = r.girth ? Json(*r.girth) : Json(nullptr);
    Json bounds = Json::array();
    for (const auto& b : r.bounds) bounds.push_back(Json{{"name", b.name}, {"value", b.value}});
    j["bounds"] = bounds;
    j["tight_bound"] = r.tight_bound ? Json(*r.tight_bound) : Json(nullptr);
    j["figure_match"] = r.figure_match ? Json(*r.figure_match) : Json(nullptr);
    j["digraph_exponent"] = r.digraph_exponent ? Json(*r.digraph_exponent) : Json(nullptr);
    return j;
}

Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::invalid_argument("cannot open " + p.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(p.string() + ": " + e.what());
    }
}

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

}  // namespace conelab
