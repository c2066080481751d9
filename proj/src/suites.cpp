#include "conelab/suites.hpp"

#include "conelab/errors.hpp"
#include "conelab/symfun.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conelab {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string show(const std::optional<int>& g) { return g ? std::to_string(*g) : "inf"; }

std::vector<int> range_or(const std::vector<int>& r, int lo, int hi) {
    if (!r.empty()) return r;
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

// Runs independent jobs, catching per-job failures, keeping output order.
template <class T>
std::vector<T> run_cells(const std::vector<std::function<T()>>& cells, int jobs,
                         const std::function<T(const std::string&, std::size_t)>& on_error) {
    std::vector<T> out(cells.size());
    const int count = static_cast<int>(cells.size());
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (int i = 0; i < count; ++i) {
        try {
            out[i] = cells[i]();
        } catch (const std::exception& e) {
            out[i] = on_error(e.what(), static_cast<std::size_t>(i));
        }
    }
    return out;
}

struct Instance {
    std::string label;
    std::function<ConeMap()> build;
};

std::vector<Instance> bound_instances(const SuiteOptions& opt) {
    std::vector<Instance> list;
    for (int n : range_or(opt.n_range, 3, 7))
        for (const char* c : {"1/4", "1/2", "3/4"})
            list.push_back({"simplicial(n=" + std::to_string(n) + ",c=" + c + ")",
                            [n, c] { return simplicial_wielandt(n, Scalar::parse(c, ScalarMode::Exact)); }});
    for (int m : range_or(opt.m_range, 3, 9))
        for (double th : theta_grid(m, opt.grid))
            list.push_back({"ktheta(m=" + std::to_string(m) + ",theta=" + fmt(th) + ")", [m, th] { return ktheta(m, th); }});
    for (int n : range_or(opt.n_range, 3, 7))
        for (auto v : all_minimal_variants())
            if (minimal_variant_allows(v, n))
                list.push_back({"minimal(" + to_string(v) + ",n=" + std::to_string(n) + ")",
                                [n, v] { return minimal_cone_family(n, v); }});
    for (int m : range_or(opt.m_range, 3, 8))
        for (int n = 3; n <= m; ++n)
            list.push_back({"highdim(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")",
                            [m, n] { return highdim(m, n).map; }});
    return list;
}

std::vector<VerifyRow> suite_bounds(const SuiteOptions& opt) {
    auto list = bound_instances(opt);
    std::mt19937_64 rng(opt.seed);
    int made = 0;
    while (made < opt.random_count) {
        ConeMap map = random_cone_map(rng, 7, 5);
        if (!is_primitive(map)) continue;
        ++made;
        list.push_back({"random#" + std::to_string(made), [map] { return map; }});
    }
    std::vector<std::function<VerifyRow()>> cells;
    for (const auto& inst : list)
        cells.push_back([inst] {
            ExponentReport r = exponent_report(inst.build(), Execution::Serial);
            auto b = min_bound(r);
            return VerifyRow{"bounds", inst.label, show(r.gamma), b ? "<=" + std::to_string(*b) : "-",
                             r.primitive && bounds_hold(r)};
        });
    return run_cells<VerifyRow>(cells, opt.jobs, [&](const std::string& e, std::size_t i) {
        return VerifyRow{"bounds", list[i].label, "error", e, false};
    });
}

std::vector<VerifyRow> suite_minimal(const SuiteOptions& opt) {
    std::vector<std::function<VerifyRow()>> cells;
    std::vector<std::string> labels;
    for (int n : range_or(opt.n_range, 3, 7))
        for (auto v : all_minimal_variants()) {
            if (!minimal_variant_allows(v, n)) continue;
            std::string label = to_string(v) + "(n=" + std::to_string(n) + ")";
            labels.push_back(label);
            cells.push_back([n, v, label] {
                ConeMap map = minimal_cone_family(n, v);
                ExponentReport r = exponent_report(map, Execution::Serial);
                long want = predicted_minimal_gamma(v, n);
                bool ok = r.gamma && *r.gamma == want && classify_minimal(map.cone()).balanced;
                return VerifyRow{"minimal", label, show(r.gamma), std::to_string(want), ok};
            });
        }
    return run_cells<VerifyRow>(cells, opt.jobs, [&](const std::string& e, std::size_t i) {
        return VerifyRow{"minimal", labels[i], "error", e, false};
    });
}

std::vector<VerifyRow> suite_ktheta(const SuiteOptions& opt) {
    std::vector<std::function<VerifyRow()>> cells;
    std::vector<std::string> labels;
    for (int m : range_or(opt.m_range, 3, 9))
        for (double th : theta_grid(m, opt.grid)) {
            std::string label = "ktheta(m=" + std::to_string(m) + ",theta=" + fmt(th) + ")";
            labels.push_back(label);
            cells.push_back([m, th, label] {
                ExponentReport r = exponent_report(ktheta(m, th), Execution::Serial);
                bool ok = r.gamma && *r.gamma == 2 * m - 1;
                for (int j = 0; j < m && ok; ++j) ok = r.local_exponents[j] == 2 * m - 1 - j;
                return VerifyRow{"ktheta", label, show(r.gamma), std::to_string(2 * m - 1), ok};
            });
        }
    return run_cells<VerifyRow>(cells, opt.jobs, [&](const std::string& e, std::size_t i) {
        return VerifyRow{"ktheta", labels[i], "error", e, false};
    });
}

std::vector<VerifyRow> suite_highdim(const SuiteOptions& opt) {
    std::vector<std::function<VerifyRow()>> cells;
    std::vector<std::string> labels;
    for (int m : range_or(opt.m_range, 3, 8))
        for (int n : range_or(opt.n_range, 3, m)) {
            if (n < 3 || n > m) continue;
            std::string label = "highdim(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
            labels.push_back(label);
            cells.push_back([m, n, label] {
                HighDimInstance h = highdim(m, n);
                ExponentReport r = exponent_report(h.map, Execution::Serial);
                const int top = (n - 1) * (m - 1) + 1;
                const bool bracket = m % 2 == 1 && n % 2 == 0;
                bool ok = r.gamma && (bracket ? *r.gamma >= top - 1 && *r.gamma <= top : *r.gamma == top);
                std::string want = bracket ? "[" + std::to_string(top - 1) + "," + std::to_string(top) + "]"
                                           : std::to_string(top);
                return VerifyRow{"highdim", label + ",c=" + fmt(h.c), show(r.gamma), want, ok};
            });
        }
    return run_cells<VerifyRow>(cells, opt.jobs, [&](const std::string& e, std::size_t i) {
        return VerifyRow{"highdim", labels[i], "error", e, false};
    });
}

bool limit_face_holds(const std::vector<Vector>& ys, int n) {
    PolyhedralCone k = build_cone(ys);
    if (k.num_rays() != static_cast<int>(ys.size())) return false;
    Vector sum = zeros(static_cast<std::size_t>(n), ScalarMode::Float);
    RaySet want = 0;
    for (int j = 0; j + 1 < n; ++j) {
        sum = add(sum, ys[j]);
        want |= singleton(j);
    }
    PointClass pc = classify_point(k, sum);
    if (pc.kind != PointKind::Boundary || pc.face.rays != want) return false;
    if (face_dim(k, want) != n - 1) return false;
    return same_sign(det_q(ys));
}

std::vector<VerifyRow> suite_symfun(const SuiteOptions& opt) {
    std::vector<VerifyRow> rows;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    double worst1 = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        int p = std::uniform_int_distribution<int>(n - 1, 9)(rng);
        ComplexTuple t;
        for (int i = 0; i < n; ++i) t.emplace_back(coord(rng), coord(rng));
        worst1 = std::max(worst1, claim1_residual(p, t));
    }
    rows.push_back({"symfun", "claim1(100 random tuples)", fmt(worst1), "<=1e-09", worst1 <= 1e-9});

    for (int m : range_or(opt.m_range, 4, 12)) {
        double worst2 = 0;
        const int top = std::min(4, m - 1);
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t(1) << m); ++mask) {
            if (std::popcount(mask) > top) continue;
            RootSubset s{m, {}};
            for (int k = 0; k < m; ++k)
                if (mask >> k & 1u) s.indices.push_back(k);
            worst2 = std::max(worst2, claim2_residual(s));
        }
        for (int n = 3; n < m; ++n)
            if (n % 2 == 1 || m % 2 == 0) worst2 = std::max(worst2, claim2_residual(claim3_set(m, n)));
        rows.push_back({"symfun", "claim2(m=" + std::to_string(m) + ")", fmt(worst2), "<=1e-09", worst2 <= 1e-9});

        for (int n = 3; n < m; ++n) {
            if (n % 2 == 0 && m % 2 == 1) continue;
            const auto h = claim3_values(m, n);
            double lowest = std::numeric_limits<double>::infinity(), imag = 0;
            for (auto z : h) {
                lowest = std::min(lowest, z.real());
                imag = std::max(imag, std::fabs(z.imag()));
            }
            bool coeffs = true;
            for (auto z : complement_poly(claim3_set(m, n))) coeffs = coeffs && z.real() > 1e-9 && std::fabs(z.imag()) <= 1e-9;
            bool ok = (h.empty() || (lowest > 1e-9 && imag <= 1e-9)) && coeffs;
            rows.push_back({"symfun", "claim3(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")",
                            h.empty() ? "-" : fmt(lowest), ">1e-09", ok});
        }
        if (m <= 10) {
            for (int n = 3; n <= m; ++n) {
                const bool k1 = m % 2 == 1 && n % 2 == 0;
                if (k1 && n > m - 1) continue;
                auto ys = limit_vectors_k0(k1 ? m - 1 : m, n);
                std::string label = std::string(k1 ? "limit_face(K1," : "limit_face(K0,") + "m=" + std::to_string(m) +
                                    ",n=" + std::to_string(n) + ")";
                bool ok = false;
                try {
                    ok = limit_face_holds(ys, n);
                } catch (const std::exception&) {
                    ok = false;
                }
                rows.push_back({"symfun", label, ok ? "simplicial face" : "fail", "simplicial face", ok});
            }
        }
    }
    return rows;
}

}  // namespace

std::vector<double> theta_grid(int m, int grid) {
    const double lo = 2 * std::numbers::pi / m, hi = 2 * std::numbers::pi / (m - 1);
    std::vector<double> out;
    for (int k = 1; k <= grid; ++k) out.push_back(lo + (hi - lo) * k / (grid + 1));
    return out;
}

std::optional<long> min_bound(const ExponentReport& r) {
    std::optional<long> best;
    for (const auto& b : r.bounds)
        if (!best || b.value < *best) best = b.value;
    return best;
}

bool bounds_hold(const ExponentReport& r) {
    if (!r.gamma) return false;
    for (const auto& b : r.bounds) {
        if (*r.gamma > b.value) return false;
        if (b.name == "minpoly_rays" && *r.gamma == b.value && r.figure_match != 1) return false;
    }
    return true;
}

std::vector<std::string> suite_names() { return {"bounds", "minimal", "ktheta", "highdim", "symfun"}; }

std::vector<VerifyRow> run_suite(const std::string& suite, const SuiteOptions& opt) {
    if (suite == "bounds") return suite_bounds(opt);
    if (suite == "minimal") return suite_minimal(opt);
    if (suite == "ktheta") return suite_ktheta(opt);
    if (suite == "highdim") return suite_highdim(opt);
    if (suite == "symfun") return suite_symfun(opt);
    if (suite == "all") {
        std::vector<VerifyRow> all;
        for (const auto& s : suite_names()) {
            auto rows = run_suite(s, opt);
            all.insert(all.end(), rows.begin(), rows.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

namespace {

SweepRow sweep_row(const std::string& family, int m, int n, const std::string& params, const ExponentReport& r) {
    SweepRow row;
    row.family = family;
    row.m = m;
    row.n = n;
    row.params = params;
    row.gamma = r.gamma;
    row.min_bound = min_bound(r);
    row.tight_bound = r.tight_bound.value_or("");
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::string& family, const SweepOptions& opt) {
    std::vector<std::function<SweepRow()>> cells;
    std::vector<SweepRow> stubs;  // identifies the cell when it throws
    auto add = [&](std::string fam, int m, int n, std::string params, std::function<SweepRow()> f) {
        SweepRow stub;
        stub.family = std::move(fam);
        stub.m = m;
        stub.n = n;
        stub.params = std::move(params);
        stubs.push_back(std::move(stub));
        cells.push_back(std::move(f));
    };
    if (family == "highdim") {
        for (int m : range_or(opt.m_range, 4, 9))
            for (int n : range_or(opt.n_range, 3, m)) {
                if (n < 3 || n > m) continue;
                add("highdim", m, n, "", [m, n] {
                    HighDimInstance h = highdim(m, n);
                    SweepRow row = sweep_row("highdim", m, n, "c=" + fmt(h.c), exponent_report(h.map, Execution::Serial));
                    const int top = (n - 1) * (m - 1) + 1;
                    if (m % 2 == 1 && n % 2 == 0) {
                        row.predicted = "[" + std::to_string(top - 1) + "," + std::to_string(top) + "]";
                        row.pass = row.gamma && *row.gamma >= top - 1 && *row.gamma <= top;
                        if (row.gamma) row.probe = *row.gamma == top - 1 ? "at (n-1)(m-1)" : "above (n-1)(m-1)";
                    } else {
                        row.predicted = std::to_string(top);
                        row.pass = row.gamma == top;
                    }
                    return row;
                });
            }
    } else if (family == "ktheta") {
        for (int m : range_or(opt.m_range, 3, 9))
            for (double th : theta_grid(m, opt.theta_grid))
                add("ktheta", m, 3, "theta=" + fmt(th), [m, th] {
                    SweepRow row = sweep_row("ktheta", m, 3, "theta=" + fmt(th), exponent_report(ktheta(m, th), Execution::Serial));
                    row.predicted = std::to_string(2 * m - 1);
                    row.pass = row.gamma == 2 * m - 1;
                    return row;
                });
    } else if (family == "minimal") {
        std::vector<MinimalVariant> vs;
        if (opt.all_variants || opt.variants.empty()) vs = all_minimal_variants();
        else
            for (const auto& v : opt.variants) vs.push_back(parse_minimal_variant(v));
        for (int n : range_or(opt.n_range, 3, 6))
            for (auto v : vs) {
                if (!minimal_variant_allows(v, n)) continue;
                add("minimal", n + 1, n, "variant=" + to_string(v), [n, v] {
                    SweepRow row = sweep_row("minimal", n + 1, n, "variant=" + to_string(v),
                                             exponent_report(minimal_cone_family(n, v), Execution::Serial));
                    row.predicted = std::to_string(predicted_minimal_gamma(v, n));
                    row.pass = row.gamma && *row.gamma == predicted_minimal_gamma(v, n);
                    return row;
                });
            }
    } else if (family == "simplicial") {
        const std::vector<std::string> cs = opt.c_values.empty() ? std::vector<std::string>{"1/4", "1/2", "3/4"} : opt.c_values;
        for (int n : range_or(opt.n_range, 3, 7))
            for (const auto& c : cs)
                add("simplicial", n, n, "c=" + c, [n, c] {
                    SweepRow row = sweep_row("simplicial", n, n, "c=" + c,
                                             exponent_report(simplicial_wielandt(n, Scalar::parse(c, ScalarMode::Exact)), Execution::Serial));
                    const int want = (n - 1) * (n - 1) + 1;
                    row.predicted = std::to_string(want);
                    row.pass = row.gamma == want;
                    return row;
                });
    } else if (family == "regular_polygon") {
        for (int m : range_or(opt.m_range, 5, 8))
            add("regular_polygon", m, 3, "", [m] {
                ConeMap map = regular_polygon(m);
                SweepRow row = sweep_row("regular_polygon", m, 3, "", exponent_report(map, Execution::Serial));
                row.predicted = "not primitive";
                row.pass = !row.gamma && is_irreducible(map);
                return row;
            });
    } else if (family == "figure2") {
        for (int m : range_or(opt.m_range, 3, 9))
            for (double th : theta_grid(m, opt.theta_grid))
                add("figure2", m, 3, "theta=" + fmt(th), [m, th] {
                    ConeMap map = figure2_from_figure1(ktheta(m, th));
                    SweepRow row = sweep_row("figure2", m, 3, "theta=" + fmt(th), exponent_report(map, Execution::Serial));
                    row.predicted = std::to_string(2 * m - 2);
                    row.pass = row.gamma == 2 * m - 2;
                    return row;
                });
    } else {
        throw std::invalid_argument("unknown sweep family '" + family + "'");
    }
    return run_cells<SweepRow>(cells, opt.jobs, [&](const std::string& e, std::size_t i) {
        SweepRow row = stubs[i];
        row.note = e;
        return row;
    });
}

}  // namespace conelab
