#include "conelab/constructions.hpp"

#include "conelab/errors.hpp"
#include "conelab/poly.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;

Vector basis(int n, int i, ScalarMode mode) {
    Vector v = zeros(static_cast<std::size_t>(n), mode);
    v[static_cast<std::size_t>(i)] = Scalar::one(mode);
    return v;
}

bool positive(const Scalar& s) { return s.is_exact() ? s.exact_sign() > 0 : s.d() > 0; }
bool below_one(const Scalar& s) { return s.is_exact() ? s.q() < 1 : s.d() < 1; }

void put_rotation(Matrix& a, std::size_t at, double r, double theta) {
    a(at, at) = Scalar::real(r * std::cos(theta));
    a(at, at + 1) = Scalar::real(-r * std::sin(theta));
    a(at + 1, at) = Scalar::real(r * std::sin(theta));
    a(at + 1, at + 1) = Scalar::real(r * std::cos(theta));
}

std::string text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ConeMap simplicial_wielandt(int n, const Scalar& c) {
    if (n < 3) throw std::invalid_argument("simplicial_wielandt needs n >= 3");
    if (!positive(c) || !below_one(c)) throw std::invalid_argument("simplicial_wielandt needs 0 < c < 1");
    const ScalarMode mode = c.mode();
    std::vector<Vector> rays;
    for (int i = 0; i < n; ++i) rays.push_back(basis(n, i, mode));
    Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n), mode);
    for (int j = 0; j + 1 < n; ++j) a(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(j)) = Scalar::one(mode);
    a(0, static_cast<std::size_t>(n - 1)) = Scalar::one(mode) - c;
    a(1, static_cast<std::size_t>(n - 1)) = c;
    return verify_map(a, build_cone(rays));
}

std::string to_string(MinimalVariant v) {
    switch (v) {
        case MinimalVariant::Rel2Eq2: return "rel2eq2";
        case MinimalVariant::Rel3Eq3: return "rel3eq3";
        case MinimalVariant::Rel3Eq4: return "rel3eq4";
        case MinimalVariant::Rel5Eq5: return "rel5eq5";
        case MinimalVariant::Rel2Eq6: return "rel2eq6";
        case MinimalVariant::Rel1Eq1: return "rel1eq1";
    }
    return "?";
}

const std::vector<MinimalVariant>& all_minimal_variants() {
    static const std::vector<MinimalVariant> all = {MinimalVariant::Rel2Eq2, MinimalVariant::Rel3Eq3,
                                                    MinimalVariant::Rel3Eq4, MinimalVariant::Rel5Eq5,
                                                    MinimalVariant::Rel2Eq6, MinimalVariant::Rel1Eq1};
    return all;
}

MinimalVariant parse_minimal_variant(const std::string& s) {
    for (auto v : all_minimal_variants())
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown minimal-cone variant '" + s + "'");
}

bool minimal_variant_allows(MinimalVariant v, int n) {
    if (n < 3) return false;
    const bool odd = n % 2 == 1;
    switch (v) {
        case MinimalVariant::Rel2Eq2:
        case MinimalVariant::Rel2Eq6: return odd;
        default: return !odd;
    }
}

long predicted_minimal_gamma(MinimalVariant v, int n) {
    const long q = long(n) * n - n;
    switch (v) {
        case MinimalVariant::Rel2Eq2: return q + 1;
        case MinimalVariant::Rel3Eq4: return q - 1;
        default: return q;
    }
}

ConeMap minimal_cone_family(int n, MinimalVariant v, const Scalar& alpha, const Scalar& beta) {
    if (!minimal_variant_allows(v, n))
        throw std::invalid_argument(to_string(v) + " is not defined for n = " + std::to_string(n));
    if (!positive(alpha)) throw std::invalid_argument("alpha must be positive");
    if (v != MinimalVariant::Rel2Eq2 && v != MinimalVariant::Rel3Eq3) {
        if (!positive(beta)) throw std::invalid_argument("beta must be positive");
        if (v == MinimalVariant::Rel3Eq4 && !below_one(beta)) throw std::invalid_argument("eq4 needs beta < 1");
    }
    const ScalarMode mode = alpha.mode();
    const Scalar b = beta.mode() == mode ? beta : convert({beta}, mode)[0];
    const Scalar one = Scalar::one(mode);
    const int m = n + 1;

    // Relation coefficients (1-based index): sum coef_i x_i = 0, with x_m on the right.
    std::vector<int> coef(static_cast<std::size_t>(m + 1), 0);
    for (int i = 1; i <= m; ++i) {
        switch (v) {
            case MinimalVariant::Rel2Eq2:
            case MinimalVariant::Rel2Eq6: coef[i] = i % 2 ? 1 : -1; break;
            case MinimalVariant::Rel3Eq3:
            case MinimalVariant::Rel3Eq4: coef[i] = (i == 1 || i == 2 || i % 2 == 0) ? 1 : -1; break;
            case MinimalVariant::Rel5Eq5: coef[i] = (i == 2 || (i % 2 == 1 && i >= 3)) ? 1 : -1; break;
            case MinimalVariant::Rel1Eq1: coef[i] = i == 2 ? 0 : (i == 1 || i % 2 == 0) ? 1 : -1; break;
        }
    }
    std::vector<Vector> x(static_cast<std::size_t>(m + 1));
    for (int i = 1; i <= n; ++i) x[i] = basis(n, i - 1, mode);
    x[m] = zeros(static_cast<std::size_t>(n), mode);
    const int sm = coef[m];
    for (int i = 1; i <= n; ++i) x[m][i - 1] = Scalar::from_int(-coef[i] * sm, mode);

    // Images of x_1..x_n; A x_m must then come out as the variant's formula.
    std::vector<Vector> img(static_cast<std::size_t>(m + 1));
    const Vector& x1 = x[1];
    const Vector& x2 = x[2];
    const Vector& x3 = x[3];
    Vector expect;
    int mid = 3;
    switch (v) {
        case MinimalVariant::Rel2Eq2:
            img[1] = scale(one + alpha, x2);
            expect = add(x1, scale(alpha, x2));
            mid = 2;
            break;
        case MinimalVariant::Rel3Eq3:
            img[1] = scale(alpha, x2);
            expect = add(x1, scale(one + alpha, x2));
            mid = 2;
            break;
        case MinimalVariant::Rel3Eq4:
            img[1] = add(scale(alpha, x2), scale(one - b, x3));
            img[2] = scale(b, x3);
            expect = add(x1, scale(one + alpha, x2));
            break;
        case MinimalVariant::Rel5Eq5:
            img[1] = add(scale(one + alpha, x2), scale(one + b, x3));
            img[2] = scale(b, x3);
            expect = add(x1, scale(alpha, x2));
            break;
        case MinimalVariant::Rel2Eq6:
            img[1] = add(scale(one + alpha, x2), scale(b, x3));
            img[2] = scale(one + b, x3);
            expect = add(x1, scale(alpha, x2));
            break;
        case MinimalVariant::Rel1Eq1:
            img[1] = add(scale(alpha, x2), x3);
            img[2] = scale(b, x3);
            expect = add(x1, scale(alpha, x2));
            break;
    }
    for (int i = mid; i < m; ++i) img[i] = x[i + 1];
    std::vector<Vector> cols(img.begin() + 1, img.begin() + m);
    Matrix a = Matrix::from_columns(cols);
    Vector got = a.apply(x[m]);
    if (mode == ScalarMode::Exact ? got != expect : inf_norm(sub(got, expect)) > 1e-12 * (1 + inf_norm(expect)))
        throw std::logic_error("minimal-cone equations are inconsistent with the relation");
    std::vector<Vector> rays(x.begin() + 1, x.end());
    return verify_map(a, build_cone(rays));
}

ConeMap minimal_cone_family(int n, MinimalVariant v) {
    const Scalar beta = v == MinimalVariant::Rel3Eq4 ? Scalar::exact(1, 2) : Scalar::exact(1);
    return minimal_cone_family(n, v, Scalar::exact(1), beta);
}

ConeMap ktheta(int m, double theta) {
    if (m < 3) throw std::invalid_argument("ktheta needs m >= 3");
    if (!(theta > 2 * kPi / m && theta < 2 * kPi / (m - 1)))
        throw std::invalid_argument("ktheta needs theta strictly inside (2pi/m, 2pi/(m-1))");
    const double r = solve_g_theta(m, theta).r_theta;
    std::vector<Vector> rays;
    for (int j = 0; j < m; ++j) {
        double rj = std::pow(r, j);
        rays.push_back(vector_from_doubles({rj * std::cos(j * theta), rj * std::sin(j * theta), 1.0}, ScalarMode::Float));
    }
    Matrix a(3, 3, ScalarMode::Float);
    put_rotation(a, 0, r, theta);
    a(2, 2) = Scalar::real(1.0);
    return verify_map(a, build_cone(rays));
}

ConeMap regular_polygon(int m) {
    if (m < 3) throw std::invalid_argument("regular_polygon needs m >= 3");
    std::vector<Vector> rays;
    for (int j = 1; j <= m; ++j) {
        double t = 2 * kPi * j / m;
        rays.push_back(vector_from_doubles({std::cos(t), std::sin(t), 1.0}, ScalarMode::Float));
    }
    Matrix a(3, 3, ScalarMode::Float);
    put_rotation(a, 0, 1.0, 2 * kPi / m);
    a(2, 2) = Scalar::real(1.0);
    return verify_map(a, build_cone(rays));
}

std::vector<int> highdim_boundary_rays(int m, int n) {
    std::vector<int> idx;
    if (m % 2 == 1 && n % 2 == 0) {
        for (int j = m - n + 1; j <= m - 1; ++j) idx.push_back(j - 1);
    } else {
        for (int j = m - n + 2; j <= m; ++j) idx.push_back(j - 1);
    }
    return idx;
}

namespace {

bool near_limit_one(int m, int n) { return m % 2 == 1 && n % 2 == 0; }

// Raised when some facet value is too close to zero to classify reliably in binary64.
class Ambiguous : public RootSelectionFailed {
public:
    using RootSelectionFailed::RootSelectionFailed;
};

// Every facet value of the rays and their images is either roundoff-level or clearly positive.
void check_margins(const PolyhedralCone& k, const Matrix& a) {
    const double lo = 1e-12, hi = 1e3 * k.tol().eps_incidence;
    for (const Vector& x : k.rays())
        for (const Vector& y : {x, a.apply(x)}) {
            const double scale = 1 + inf_norm(y);
            for (const auto& f : k.facets()) {
                double v = std::fabs(dot(f.normal, y).to_double()) / scale;
                if (v > lo && v < hi) throw Ambiguous("facet margins are below the reliable range");
            }
        }
}

// The binary64 power iterates of every ray show the same facet pattern as face iteration.
void check_iterates(const ConeMap& map) {
    const PolyhedralCone& k = map.cone();
    const auto a = map.matrix().to_doubles();
    std::vector<std::vector<double>> normals;
    for (const auto& f : k.facets()) {
        auto u = to_doubles(f.normal);
        double norm = 0;
        for (double x : u) norm += x * x;
        for (double& x : u) x /= std::sqrt(norm);
        normals.push_back(std::move(u));
    }
    const double eps = 2 * k.tol().eps_incidence;
    const std::size_t n = a.size();
    for (int i = 0; i < k.num_rays(); ++i) {
        RaySet f = k.closure(singleton(i));
        std::vector<double> v = to_doubles(k.ray(i));
        for (int step = 0; step <= 4 * kMaxRays * kMaxDim; ++step) {
            double vmax = 0;
            for (double x : v) vmax = std::max(vmax, std::fabs(x));
            for (double& x : v) x /= vmax;
            for (std::size_t j = 0; j < normals.size(); ++j) {
                double s = 0;
                for (std::size_t r = 0; r < n; ++r) s += normals[j][r] * v[r];
                const bool on = (k.facets()[j].incidence & f) == f;
                if (on != (s <= eps)) throw Ambiguous("power iterates leave the resolvable range");
            }
            if (f == k.all_rays()) break;
            f = map.step(f);
            std::vector<double> w(n, 0.0);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) w[r] += a[r][c] * v[c];
            v = std::move(w);
        }
    }
}

ConeMap highdim_at(int m, int n, double c) {
    const HPolySpectrum spec = roots_of_h(m, c);
    if (spec.near_double_root) throw RootSelectionFailed("c is too close to c_m");
    const bool odd_even = near_limit_one(m, n);
    const int period = odd_even ? m - 1 : m;
    const int p = (n - 1) / 2;

    std::vector<std::pair<double, double>> chosen;
    std::vector<bool> taken(spec.conjugate_pairs.size(), false);
    for (int j = 1; j <= p; ++j) {
        const Complex target = std::polar(1.0, 2 * kPi * j / period);
        std::size_t best = spec.conjugate_pairs.size();
        double dist = 0;
        for (std::size_t k = 0; k < spec.conjugate_pairs.size(); ++k) {
            auto [r, th] = spec.conjugate_pairs[k];
            double d = std::abs(std::polar(r, th) - target);
            if (best == spec.conjugate_pairs.size() || d < dist) best = k, dist = d;
        }
        if (best == spec.conjugate_pairs.size() || taken[best])
            throw RootSelectionFailed("two sectors claim the same root of h");
        auto [r, th] = spec.conjugate_pairs[best];
        // The root must also be nearer to this sector than to any other period-th root of unity.
        for (int k = 0; k < period; ++k)
            if (k != j && std::abs(std::polar(r, th) - std::polar(1.0, 2 * kPi * k / period)) < dist)
                throw RootSelectionFailed("root of h is not isolated in its sector");
        taken[best] = true;
        chosen.emplace_back(r, th);
    }
    if (p >= 1 && !(chosen[0].second > 2 * kPi / m && chosen[0].second < 2 * kPi / (m - 1)))
        throw RootSelectionFailed("first angle lies outside (2pi/m, 2pi/(m-1))");

    std::optional<double> extra;
    if (n % 2 == 0) {
        std::vector<double> others;
        for (double x : spec.real_roots)
            if (std::fabs(x - 1) > 1e-9) others.push_back(x);
        if (odd_even) {
            if (others.size() != 2) throw RootSelectionFailed("h needs three simple real roots");
            extra = others.front();
        } else {
            if (others.size() != 1) throw RootSelectionFailed("h needs exactly one real root besides 1");
            extra = others.front();
        }
    }

    std::vector<Vector> rays;
    for (int j = 0; j < m; ++j) {
        std::vector<double> v;
        for (auto [r, th] : chosen) {
            double rj = std::pow(r, j);
            v.push_back(rj * std::cos(j * th));
            v.push_back(rj * std::sin(j * th));
        }
        if (extra) v.push_back(std::pow(*extra, j));
        v.push_back(1.0);
        rays.push_back(vector_from_doubles(v, ScalarMode::Float));
    }
    Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ScalarMode::Float);
    for (std::size_t k = 0; k < chosen.size(); ++k) put_rotation(a, 2 * k, chosen[k].first, chosen[k].second);
    if (extra) a(static_cast<std::size_t>(n - 2), static_cast<std::size_t>(n - 2)) = Scalar::real(*extra);
    a(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1)) = Scalar::real(1.0);

    PolyhedralCone k = build_cone(rays);
    if (k.num_rays() != m) throw RootSelectionFailed("generators are not all extreme");
    check_margins(k, a);
    ConeMap map = verify_map(a, k);
    if (map.digraph() != figure1(m)) throw RootSelectionFailed("access digraph is not figure 1");
    RaySet want = 0;
    Vector sum = zeros(static_cast<std::size_t>(n), ScalarMode::Float);
    for (int i : highdim_boundary_rays(m, n)) {
        want |= singleton(i);
        sum = add(sum, k.ray(i));
    }
    auto pc = classify_point(k, sum);
    if (pc.kind != PointKind::Boundary || pc.face.rays != want)
        throw RootSelectionFailed("boundary sum does not generate the expected simplicial face");
    check_iterates(map);
    return map;
}

}  // namespace

HighDimInstance highdim(int m, int n, std::optional<double> c, int max_refinements) {
    if (n < 3 || n > m) throw std::invalid_argument("highdim needs 3 <= n <= m");
    const bool to_one = near_limit_one(m, n);
    double lo = 0, hi = 1;
    if (m % 2 == 1) {
        const double cm = c_threshold(m);
        if (to_one) lo = cm;
        else if (n % 2 == 1) hi = cm;
    }
    double cur = c.value_or(to_one ? 0.99 : 0.01);
    if (!(cur > lo && cur < hi)) throw std::invalid_argument("highdim: c outside the admissible interval");
    // Toward the limit while the construction is not yet close enough; away from it once
    // binary64 can no longer resolve the facets.
    auto toward = [&](double x) { return to_one ? (1 + x) / 2 : x / 2; };
    auto away = [&](double x) { return to_one ? 1 - 2 * (1 - x) : 2 * x; };
    double near = cur, far = cur;
    std::string last;
    for (int attempt = 0; attempt <= max_refinements; ++attempt) {
        try {
            return {highdim_at(m, n, cur), cur, attempt};
        } catch (const Ambiguous& e) {
            last = e.what();
            cur = far = away(far);
        } catch (const ConeError& e) {
            last = e.what();
            cur = near = toward(near);
        }
        if (!(cur > lo && cur < hi)) break;
    }
    throw RootSelectionFailed("highdim(" + std::to_string(m) + "," + std::to_string(n) +
                              ") failed after refinement: " + last);
}

std::vector<Vector> limit_vectors_k0(int m, int n) {
    if (n < 3 || n > m) throw std::invalid_argument("limit cone needs 3 <= n <= m");
    if (n % 2 == 0 && m % 2 == 1) throw std::invalid_argument("K0 needs n odd or m, n both even");
    const int p = (n - 1) / 2;
    std::vector<Vector> ys;
    for (int j = 0; j < m; ++j) {
        std::vector<double> v;
        for (int k = 1; k <= p; ++k) {
            double t = 2 * kPi * k * j / m;
            v.push_back(std::cos(t));
            v.push_back(std::sin(t));
        }
        if (n % 2 == 0) v.push_back(j % 2 ? -1.0 : 1.0);
        v.push_back(1.0);
        ys.push_back(vector_from_doubles(v, ScalarMode::Float));
    }
    return ys;
}

PolyhedralCone limit_cone_k0(int m, int n) { return build_cone(limit_vectors_k0(m, n)); }

PolyhedralCone limit_cone_k1(int m, int n) {
    if (!(m % 2 == 1 && n % 2 == 0)) throw std::invalid_argument("K1 needs m odd and n even");
    return build_cone(limit_vectors_k0(m - 1, n));
}

ConeMap figure2_from_figure1(const ConeMap& map, double alpha) {
    auto perm = matches_figure(map.digraph(), 1);
    if (!perm) throw ConversionFailed("access digraph is not figure 1");
    if (!(alpha > 1)) throw std::invalid_argument("alpha must exceed 1");
    const PolyhedralCone& k = map.cone();
    const int m = k.num_rays();
    std::vector<Vector> x(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) x[(*perm)[v]] = k.ray(v);
    const ScalarMode mode = k.mode();
    std::string last;
    for (int attempt = 0; attempt <= 8; ++attempt) {
        const Scalar a = Scalar::parse(text(alpha), mode);
        std::vector<Vector> rays = {add(scale(Scalar::one(mode) - a, x[0]), scale(a, x[m - 1]))};
        for (int j = 0; j + 1 < m; ++j) rays.push_back(x[j]);
        try {
            PolyhedralCone kt = build_cone(rays, k.tol());
            if (kt.num_rays() == m) {
                ConeMap out = verify_map(map.matrix(), kt);
                if (out.digraph() == figure2(m)) return out;
                last = "access digraph is not figure 2";
            } else {
                last = "perturbed generators are not all extreme";
            }
        } catch (const ConeError& e) {
            last = e.what();
        }
        alpha = 1 + (alpha - 1) / 2;
    }
    throw ConversionFailed("figure-2 conversion failed: " + last);
}

ConeMap figure1_from_figure2(const ConeMap& map) {
    auto perm = matches_figure(map.digraph(), 2);
    if (!perm) throw ConversionFailed("access digraph is not figure 2");
    const PolyhedralCone& k = map.cone();
    const int m = k.num_rays();
    std::vector<Vector> x(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) x[(*perm)[v]] = k.ray(v);
    std::vector<Vector> rays(x.begin() + 1, x.end());
    rays.push_back(map.matrix().apply(x[m - 1]));
    PolyhedralCone kh = build_cone(rays, k.tol());
    if (kh.num_rays() != m) throw ConversionFailed("A x_m is not a new extreme ray");
    ConeMap out = verify_map(map.matrix(), kh);
    if (out.digraph() != figure1(m)) throw ConversionFailed("access digraph is not figure 1");
    return out;
}

namespace {

Scalar exact_param(const std::optional<std::string>& s, const std::string& fallback) {
    return Scalar::parse(s.value_or(fallback), ScalarMode::Exact);
}

double real_param(const std::optional<std::string>& s, const char* name) {
    if (!s) throw std::invalid_argument(std::string("family needs parameter '") + name + "'");
    return Scalar::parse(*s, ScalarMode::Exact).to_double();
}

}  // namespace

ConeMap build_family(const FamilySpec& s) {
    const std::string& f = s.family;
    if (f == "simplicial") {
        if (!s.c) throw std::invalid_argument("simplicial needs c");
        return simplicial_wielandt(s.n, exact_param(s.c, ""));
    }
    if (f == "minimal") {
        if (!s.variant) throw std::invalid_argument("minimal needs a variant");
        MinimalVariant v = parse_minimal_variant(*s.variant);
        Scalar alpha = exact_param(s.alpha, "1");
        Scalar beta = exact_param(s.beta, v == MinimalVariant::Rel3Eq4 ? "1/2" : "1");
        return minimal_cone_family(s.n, v, alpha, beta);
    }
    if (f == "ktheta") {
        if (!s.theta) throw std::invalid_argument("ktheta needs theta");
        return ktheta(s.m, *s.theta);
    }
    if (f == "regular_polygon") return regular_polygon(s.m);
    if (f == "highdim") {
        std::optional<double> c;
        if (s.c) c = real_param(s.c, "c");
        return highdim(s.m, s.n, c).map;
    }
    if (f == "figure2_from_figure1") {
        if (!s.base) throw std::invalid_argument("figure2_from_figure1 needs a base family");
        double alpha = s.alpha ? real_param(s.alpha, "alpha") : 1.05;
        return figure2_from_figure1(build_family(*s.base), alpha);
    }
    if (f == "limit_k0" || f == "limit_k1") throw std::invalid_argument(f + " is a cone without a map");
    throw std::invalid_argument("unknown family '" + f + "'");
}

PolyhedralCone build_family_cone(const FamilySpec& s) {
    if (s.family == "limit_k0") return limit_cone_k0(s.m, s.n);
    if (s.family == "limit_k1") return limit_cone_k1(s.m, s.n);
    return build_family(s).cone();
}

ConeMap random_cone_map(std::mt19937_64& rng, int max_m, int max_n) {
    if (max_n < 2 || max_m < max_n) throw std::invalid_argument("random_cone_map needs 2 <= max_n <= max_m");
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        const int n = uniform(std::min(3, max_n), max_n);
        const int count = uniform(n, max_m);
        std::vector<Vector> gens;
        for (int i = 0; i < count; ++i) {
            Vector v;
            for (int k = 0; k + 1 < n; ++k) v.push_back(Scalar::exact(uniform(-3, 3)));
            v.push_back(Scalar::exact(uniform(1, 3)));
            gens.push_back(std::move(v));
        }
        PolyhedralCone k;
        try {
            k = build_cone(gens, Tolerance{}, Execution::Serial);
        } catch (const ConeError&) {
            continue;
        }
        const int m = k.num_rays();
        const auto nf = static_cast<int>(k.facets().size());
        Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ScalarMode::Exact);
        const int terms = uniform(2, n + 2);
        for (int t = 0; t < terms; ++t) {
            const Vector& x = k.ray(uniform(0, m - 1));
            const Vector& u = k.facets()[static_cast<std::size_t>(uniform(0, nf - 1))].normal;
            const Scalar w = Scalar::exact(uniform(1, 3));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += w * x[i] * u[j];
        }
        if (uniform(0, 2) == 0) {
            const Scalar d = Scalar::exact(uniform(1, 2));
            for (int i = 0; i < n; ++i) a(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) += d;
        }
        return verify_map(a, k);
    }
}

}  // namespace conelab
