#include "conelab/cone.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>

namespace conelab {

namespace {

// All k-subsets of {0..m-1} in lexicographic order of their index lists.
std::vector<RaySet> subsets_of_size(int m, int k) {
    std::vector<RaySet> out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        RaySet s = 0;
        for (int i : idx) s |= singleton(i);
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Vector normalize_normal(Vector u) {
    if (u[0].is_exact()) {
        mpz_class l = 1, g = 0;
        for (const auto& x : u) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.q().get_den_mpz_t());
        std::vector<mpz_class> z;
        for (const auto& x : u) {
            mpq_class v = x.q() * l;
            z.push_back(v.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
        }
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = Scalar(mpq_class(z[i] / g));
        return u;
    }
    double norm = 0;
    for (const auto& x : u) norm += x.d() * x.d();
    norm = std::sqrt(norm);
    for (auto& x : u) x = Scalar::real(x.d() / norm);
    return u;
}

// Facet candidate spanned by the rays in `subset`, if it supports the cone.
std::optional<Facet> facet_candidate(const std::vector<Vector>& rays, RaySet subset, const Tolerance& tol) {
    std::vector<Vector> rows;
    for (int i : members(subset)) rows.push_back(rays[static_cast<std::size_t>(i)]);
    auto ns = null_space(Matrix::from_rows(rows), tol);
    if (ns.size() != 1) return std::nullopt;
    Vector u = normalize_normal(ns[0]);
    RaySet inc = 0;
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        int s = sign(dot(u, rays[i]), inf_norm(rays[i]), tol);
        if (s == 0) inc |= singleton(static_cast<int>(i));
        else if (s > 0) ++pos;
        else ++neg;
    }
    if (pos > 0 && neg > 0) return std::nullopt;
    if (neg > 0)
        for (auto& x : u) x = -x;
    return Facet{u, inc};
}

}  // namespace

std::vector<Facet> enumerate_facets(const std::vector<Vector>& rays, const Tolerance& tol, Execution exec) {
    if (rays.empty()) return {};
    const int m = static_cast<int>(rays.size());
    const int n = static_cast<int>(rays[0].size());
    const ScalarMode mode = mode_of(rays[0]);
    if (n == 1) return {Facet{Vector{rays[0][0].to_double() > 0 ? Scalar::one(mode) : -Scalar::one(mode)}, 0}};

    const auto subsets = subsets_of_size(m, n - 1);
    std::vector<std::optional<Facet>> found(subsets.size());
    const long count = static_cast<long>(subsets.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long s = 0; s < count; ++s) found[s] = facet_candidate(rays, subsets[s], tol);
    } else {
        for (long s = 0; s < count; ++s) found[s] = facet_candidate(rays, subsets[s], tol);
    }

    std::vector<Facet> facets;
    for (auto& f : found) {
        if (!f) continue;
        bool dup = std::any_of(facets.begin(), facets.end(), [&](const Facet& g) { return g.incidence == f->incidence; });
        if (!dup) facets.push_back(std::move(*f));
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return a.incidence < b.incidence; });
    return facets;
}

}  // namespace conelab
