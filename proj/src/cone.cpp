#include "conelab/cone.hpp"

#include "conelab/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace conelab {

std::vector<int> members(RaySet s) {
    std::vector<int> out;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

Vector convert(const Vector& v, ScalarMode mode) {
    Vector r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (x.mode() == mode) r.push_back(x);
        else if (mode == ScalarMode::Float) r.push_back(Scalar::real(x.to_double()));
        else r.push_back(Scalar::from_double(x.d(), ScalarMode::Exact));
    }
    return r;
}

bool proportional(const Vector& a, const Vector& b, const Tolerance&) {
    if (a.size() != b.size()) return false;
    if (mode_of(a) == ScalarMode::Exact) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a[i].q() * b[j].q() != a[j].q() * b[i].q()) return false;
        return dot(a, b).exact_sign() > 0;
    }
    double na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) na += a[i].d() * a[i].d(), nb += b[i].d() * b[i].d();
    na = std::sqrt(na), nb = std::sqrt(nb);
    if (na == 0 || nb == 0) return false;
    double dm = 0, dp = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double u = a[i].d() / na, v = b[i].d() / nb;
        dm += (u - v) * (u - v);
        dp += (u + v) * (u + v);
    }
    double angle = 2 * std::atan2(std::sqrt(dm), std::sqrt(dp));
    return angle < 1e-9;
}

PolyhedralCone build_cone(const std::vector<Vector>& generators, ScalarMode mode, const Tolerance& tol,
                          Execution exec) {
    std::vector<Vector> g;
    for (const auto& v : generators) g.push_back(convert(v, mode));
    return build_cone(g, tol, exec);
}

PolyhedralCone build_cone(const std::vector<Vector>& generators, const Tolerance& tol, Execution exec) {
    tol.validate();
    if (generators.empty()) throw std::invalid_argument("build_cone: no generators");
    const std::size_t n = generators[0].size();
    if (n == 0) throw std::invalid_argument("build_cone: zero-dimensional generators");
    const ScalarMode mode = mode_of(generators[0]);
    for (const auto& v : generators) {
        if (v.size() != n) throw std::invalid_argument("build_cone: dimension mismatch");
        for (const auto& x : v)
            if (x.mode() != mode) throw std::invalid_argument("build_cone: mixed scalar modes");
    }
    if (n > static_cast<std::size_t>(kMaxDim)) throw TooLarge("dimension exceeds " + std::to_string(kMaxDim));

    // Drop zero vectors and later copies of proportional generators.
    std::vector<Vector> g;
    for (const auto& v : generators) {
        bool zero = std::all_of(v.begin(), v.end(), [&](const Scalar& x) { return is_zero(x, 0.0, tol); });
        if (zero) continue;
        bool dup = std::any_of(g.begin(), g.end(), [&](const Vector& w) { return proportional(v, w, tol); });
        if (!dup) g.push_back(v);
    }
    if (g.empty()) throw NotFull(0);

    for (const auto& v : g) {
        Vector neg = scale(-Scalar::one(mode), v);
        if (in_cone(neg, g, tol)) throw NotPointed();
    }

    // In a pointed cone with non-proportional generators the redundant ones are exactly the
    // non-extreme ones, so all of them can be dropped at once.
    std::vector<char> redundant(g.size(), 0);
    const long count = static_cast<long>(g.size());
    auto check = [&](long i) {
        std::vector<Vector> others;
        for (long j = 0; j < count; ++j)
            if (j != i) others.push_back(g[j]);
        redundant[i] = in_cone(g[i], others, tol) ? 1 : 0;
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) check(i);
    } else {
        for (long i = 0; i < count; ++i) check(i);
    }
    std::vector<Vector> rays;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!redundant[i]) rays.push_back(g[i]);

    int r = rank(rays, tol);
    if (r < static_cast<int>(n)) throw NotFull(r);
    if (rays.size() > static_cast<std::size_t>(kMaxRays))
        throw TooLarge(std::to_string(rays.size()) + " extreme rays exceeds " + std::to_string(kMaxRays));

    PolyhedralCone k;
    k.n_ = static_cast<int>(n);
    k.mode_ = mode;
    k.tol_ = tol;
    k.rays_ = std::move(rays);
    k.facets_ = enumerate_facets(k.rays_, tol, exec);
    return k;
}

RaySet PolyhedralCone::closure(RaySet s) const {
    RaySet out = all_rays();
    for (const auto& f : facets_)
        if ((f.incidence & s) == s) out &= f.incidence;
    return out;
}

std::vector<int> PolyhedralCone::facets_containing(RaySet s) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < facets_.size(); ++i)
        if ((facets_[i].incidence & s) == s) out.push_back(static_cast<int>(i));
    return out;
}

int face_dim(const PolyhedralCone& k, RaySet rays) {
    if (rays == 0) return 0;
    std::vector<Vector> rows;
    for (int i : members(rays)) rows.push_back(k.ray(i));
    return rank(rows, k.tol());
}

PointClass classify_point(const PolyhedralCone& k, const Vector& v) {
    if (static_cast<int>(v.size()) != k.dim()) throw std::invalid_argument("classify_point: dimension mismatch");
    Vector w = convert(v, k.mode());
    const double scale = inf_norm(w);
    RaySet face = k.all_rays();
    bool on_boundary = false;
    for (const auto& f : k.facets()) {
        int s = sign(dot(f.normal, w), scale, k.tol());
        if (s < 0) return {PointKind::Outside, {}};
        if (s == 0) {
            on_boundary = true;
            face &= f.incidence;
        }
    }
    PointClass pc;
    pc.kind = on_boundary ? PointKind::Boundary : PointKind::Interior;
    pc.face = Face{face, face_dim(k, face)};
    return pc;
}

Face face_generated_by(const PolyhedralCone& k, RaySet rays) {
    if ((rays & ~k.all_rays()) != 0) throw std::invalid_argument("face_generated_by: ray index out of range");
    RaySet f = k.closure(rays);
    return Face{f, face_dim(k, f)};
}

Face face_generated_by(const PolyhedralCone& k, const Vector& point) {
    auto pc = classify_point(k, point);
    if (pc.kind == PointKind::Outside) throw PointOutside();
    return pc.face;
}

bool neighborly(const PolyhedralCone& k, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= k.num_rays() || j >= k.num_rays())
        throw std::invalid_argument("neighborly: need two distinct ray indices");
    return classify_point(k, add(k.ray(i), k.ray(j))).kind == PointKind::Boundary;
}

std::vector<RaySet> enumerate_faces(const PolyhedralCone& k, std::size_t cap) {
    std::set<RaySet> seen{k.all_rays()};
    std::vector<RaySet> work{k.all_rays()};
    while (!work.empty()) {
        RaySet f = work.back();
        work.pop_back();
        for (const auto& facet : k.facets()) {
            RaySet g = f & facet.incidence;
            if (seen.insert(g).second) {
                if (seen.size() > cap) throw TooLarge("face lattice exceeds " + std::to_string(cap) + " faces");
                work.push_back(g);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<RaySet> decompose(const PolyhedralCone& k) {
    // Summands are the connected components of the linear matroid of the rays; the
    // fundamental circuits with respect to any basis connect each component.
    const int m = k.num_rays();
    std::vector<int> basis;
    std::vector<Vector> rows;
    for (int i = 0; i < m; ++i) {
        rows.push_back(k.ray(i));
        if (rank(rows, k.tol()) > static_cast<int>(basis.size())) basis.push_back(i);
        else rows.pop_back();
    }
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    Matrix b = Matrix::from_columns(rows);
    for (int e = 0; e < m; ++e) {
        if (std::find(basis.begin(), basis.end(), e) != basis.end()) continue;
        auto coords = solve(b, k.ray(e), k.tol());
        if (!coords) throw std::logic_error("decompose: basis is singular");
        const double scale = inf_norm(*coords);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!is_zero((*coords)[j], scale, k.tol())) parent[find(basis[j])] = find(e);
    }
    std::vector<RaySet> parts;
    std::vector<int> root_of;
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        auto it = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            parts.push_back(singleton(i));
        } else {
            parts[static_cast<std::size_t>(it - root_of.begin())] |= singleton(i);
        }
    }
    return parts;
}

MinimalConeClass classify_minimal(const PolyhedralCone& k) {
    const int n = k.dim();
    if (k.num_rays() != n + 1)
        throw NotMinimal("cone has " + std::to_string(k.num_rays()) + " extreme rays, expected " + std::to_string(n + 1));
    auto ns = null_space(Matrix::from_columns(k.rays()), k.tol());
    if (ns.size() != 1) throw NotMinimal("ray relation is not unique");
    Vector rel = ns[0];
    const double scale = inf_norm(rel);
    int first = 0, pos = 0, neg = 0, zero = 0;
    std::vector<int> signs;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        int s = sign(rel[i], scale, k.tol());
        signs.push_back(s);
        if (s == 0) ++zero;
        else if (first == 0) first = s;
        if (s > 0) ++pos;
        if (s < 0) ++neg;
    }
    if (first < 0)
        for (auto& x : rel) x = -x;
    for (std::size_t i = 0; i < rel.size(); ++i)
        if (signs[i] == 0) rel[i] = Scalar::zero(k.mode());
    MinimalConeClass c;
    c.n = n;
    c.d = zero;
    c.decomposable = zero > 0;
    c.p = std::min(pos, neg);
    c.q = std::max(pos, neg);
    c.balanced = c.q - c.p <= 1;
    c.relation = rel;
    return c;
}

}  // namespace conelab
