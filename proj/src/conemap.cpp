#include "conelab/conemap.hpp"

#include "conelab/errors.hpp"
#include "conelab/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace conelab {

RaySet ConeMap::step(RaySet f) const {
    RaySet u = 0;
    for (int j : members(f)) u |= images_[static_cast<std::size_t>(j)];
    return k_.closure(u);
}

ConeMap verify_map(const Matrix& a, const PolyhedralCone& k) {
    if (a.rows() != a.cols() || static_cast<int>(a.rows()) != k.dim())
        throw std::invalid_argument("verify_map: matrix size does not match the cone dimension");
    Matrix am = a.mode() == k.mode() ? a : Matrix::from_rows([&] {
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(convert(a.row(i), k.mode()));
        return rows;
    }());
    ConeMap map;
    map.a_ = am;
    map.k_ = k;
    for (int i = 0; i < k.num_rays(); ++i) {
        Vector y = am.apply(k.ray(i));
        auto witness = [&] {
            int best = -1;
            double worst = 0;
            for (std::size_t f = 0; f < k.facets().size(); ++f) {
                double v = dot(k.facets()[f].normal, y).to_double();
                if (v < worst) worst = v, best = static_cast<int>(f);
            }
            return best;
        };
        if (!in_cone(y, k.rays(), k.tol())) throw NotConePreserving(i, witness());
        auto pc = classify_point(k, y);
        if (pc.kind == PointKind::Outside) throw NotConePreserving(i, witness());
        map.images_.push_back(pc.face.rays);
    }
    map.digraph_ = Digraph(k.num_rays());
    for (int i = 0; i < k.num_rays(); ++i)
        for (int j : members(map.images_[static_cast<std::size_t>(i)])) map.digraph_.add_arc(i, j);
    map.m_a_ = min_poly_degree(am, k.tol());
    return map;
}

const Digraph& access_digraph(const ConeMap& map) { return map.digraph(); }

RaySet smallest_invariant_face(const ConeMap& map, int i) {
    const PolyhedralCone& k = map.cone();
    RaySet f = k.closure(singleton(i));
    while (true) {
        RaySet g = k.closure(f | map.step(f));
        if (g == f) return f;
        f = g;
    }
}

bool is_irreducible(const ConeMap& map) {
    const PolyhedralCone& k = map.cone();
    try {
        for (RaySet f : enumerate_faces(k)) {
            if (f == 0 || f == k.all_rays()) continue;
            if ((map.step(f) & ~f) == 0) return false;
        }
        return true;
    } catch (const TooLarge&) {
        for (int i = 0; i < k.num_rays(); ++i)
            if (smallest_invariant_face(map, i) != k.all_rays()) return false;
        return true;
    }
}

LocalExponent local_exponent(const ConeMap& map, int i) {
    const PolyhedralCone& k = map.cone();
    RaySet f = k.closure(singleton(i));
    std::set<RaySet> seen;
    for (int step = 0;; ++step) {
        if (f == k.all_rays()) return step;
        if (!seen.insert(f).second) return std::nullopt;
        f = map.step(f);
    }
}

bool is_primitive(const ConeMap& map) {
    for (int i = 0; i < map.cone().num_rays(); ++i)
        if (!local_exponent(map, i)) return false;
    return true;
}

LocalExponent numeric_local_exponent(const ConeMap& map, int i, int k_max) {
    const PolyhedralCone& k = map.cone();
    const auto a = map.matrix().to_doubles();
    std::vector<std::vector<double>> normals;
    for (const auto& f : k.facets()) {
        auto u = to_doubles(f.normal);
        double norm = 0;
        for (double x : u) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : u) x /= norm;
        normals.push_back(u);
    }
    const double eps = k.tol().eps_incidence;
    const double anorm = map.matrix().inf_norm();
    std::vector<double> v = to_doubles(k.ray(i));
    const std::size_t n = v.size();
    for (int step = 0; step <= k_max; ++step) {
        double vmax = 0;
        for (double x : v) vmax = std::max(vmax, std::fabs(x));
        if (vmax == 0) return std::nullopt;
        for (double& x : v) x /= vmax;
        bool interior = true;
        for (const auto& u : normals) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += u[j] * v[j];
            if (s <= eps * 2.0) {
                interior = false;
                break;
            }
        }
        if (interior) return step;
        std::vector<double> w(n, 0.0);
        double wmax = 0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) w[r] += a[r][c] * v[c];
            wmax = std::max(wmax, std::fabs(w[r]));
        }
        // A v is roundoff: v lies in the kernel.
        if (wmax <= eps * anorm) return std::nullopt;
        v = std::move(w);
    }
    return std::nullopt;
}

namespace {

bool complete_on_three(const Digraph& d) {
    if (d.size() != 3) return false;
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if ((u != v) != d.has_arc(u, v)) return false;
    return true;
}

}  // namespace

ExponentReport exponent_report(const ConeMap& map, Execution exec) {
    const PolyhedralCone& k = map.cone();
    const Digraph& d = map.digraph();
    ExponentReport r;
    r.m = k.num_rays();
    r.n = k.dim();
    r.m_a = map.minpoly_degree();
    r.local_exponents.assign(static_cast<std::size_t>(r.m), std::nullopt);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < r.m; ++i) r.local_exponents[i] = local_exponent(map, i);
    } else {
        for (int i = 0; i < r.m; ++i) r.local_exponents[i] = local_exponent(map, i);
    }
    r.primitive = std::all_of(r.local_exponents.begin(), r.local_exponents.end(), [](auto e) { return e.has_value(); });
    if (r.primitive) {
        int g = 0;
        for (auto e : r.local_exponents) g = std::max(g, *e);
        r.gamma = g;
    }
    if (matches_figure(d, 1)) r.figure_match = 1;
    else if (matches_figure(d, 2)) r.figure_match = 2;
    if (is_primitive_digraph(d)) r.digraph_exponent = digraph_exponent(d);

    const CircuitProfile prof = circuit_profile(d);
    r.girth = prof.girth;
    if (!r.primitive) return r;

    const long m = r.m, n = r.n, ma = r.m_a;
    long per_vertex = 0, access = 0;
    bool every_vertex_reaches = true;
    for (int v = 0; v < r.m; ++v) {
        const auto& acc = prof.access[static_cast<std::size_t>(v)];
        if (acc.empty()) {
            every_vertex_reaches = false;
            continue;
        }
        long best = std::numeric_limits<long>::max(), best_access = best;
        for (const auto& [w, l] : acc) {
            best = std::min(best, w + (ma - 1) * l);
            best_access = std::min(best_access, m + (ma - 2) * l);
        }
        per_vertex = std::max(per_vertex, best);
        access = std::max(access, best_access);
    }
    if (every_vertex_reaches) {
        r.bounds.push_back({"circuit_distance", per_vertex});
        r.bounds.push_back({"circuit_access", access});
    }
    if (prof.girth) {
        const long s = *prof.girth;
        if (prof.strongly_connected) r.bounds.push_back({"strong_girth", m + s * (ma - 2)});
        if (k.simplicial()) r.bounds.push_back({"simplicial_girth", n + s * (n - 2)});
        if (s > (m - 1) / 2) r.bounds.push_back({"long_girth", s * (ma - 2) + m});
    }
    if (ma == 2) r.bounds.push_back({"quadratic_minpoly", 2});
    if (d.symmetric()) r.bounds.push_back({"symmetric_digraph", 2 * (ma - 1)});
    r.bounds.push_back({"minpoly_rays", (ma - 1) * (m - 1) + 1});
    if (!r.figure_match && !complete_on_three(d)) r.bounds.push_back({"non_figure", (n - 1) * (m - 2) + 2});
    if (r.digraph_exponent) r.bounds.push_back({"digraph_exponent", *r.digraph_exponent});
    for (const auto& b : r.bounds)
        if (b.value == *r.gamma) {
            r.tight_bound = b.name;
            break;
        }
    return r;
}

bool is_k_positive(const Matrix& b, const PolyhedralCone& k) {
    for (int i = 0; i < k.num_rays(); ++i)
        if (classify_point(k, b.apply(convert(k.ray(i), b.mode()))).kind != PointKind::Interior) return false;
    return true;
}

PowerRelation fit_power_relation(const Matrix& a, int p) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) e(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();
    Eigen::MatrixXd ap = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < p; ++i) ap = ap * e;
    Eigen::MatrixXd design(n * n, 2);
    Eigen::VectorXd rhs(n * n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            design(i * n + j, 0) = e(i, j);
            design(i * n + j, 1) = id(i, j);
            rhs(i * n + j) = ap(i, j);
        }
    Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
    PowerRelation pr;
    pr.c = sol(0);
    pr.d = sol(1);
    pr.residual = (design * sol - rhs).cwiseAbs().maxCoeff();
    return pr;
}

}  // namespace conelab
