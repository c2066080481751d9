#include "conelab/digraph.hpp"

#include "conelab/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace conelab {

namespace {

std::uint64_t bit(int i) { return std::uint64_t(1) << i; }
std::uint64_t all_of(int m) { return m >= 64 ? ~std::uint64_t(0) : bit(m) - 1; }

template <class F>
void for_each_bit(std::uint64_t s, F f) {
    while (s) {
        int i = std::countr_zero(s);
        f(i);
        s &= s - 1;
    }
}

std::uint64_t reach_from(const Digraph& d, int v) {
    std::uint64_t seen = bit(v), frontier = bit(v);
    while (frontier) {
        std::uint64_t next = 0;
        for_each_bit(frontier, [&](int u) { next |= d.out(u); });
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

Digraph reversed(const Digraph& d) {
    Digraph r(d.size());
    for (auto [u, v] : d.arcs()) r.add_arc(v, u);
    return r;
}

// Distance from each vertex to the nearest member of `targets`, -1 when unreachable.
std::vector<int> distance_to(const Digraph& d, std::uint64_t targets) {
    std::vector<int> dist(d.size(), -1);
    std::queue<int> q;
    for_each_bit(targets, [&](int v) { dist[v] = 0; q.push(v); });
    Digraph r = reversed(d);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for_each_bit(r.out(v), [&](int u) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        });
    }
    return dist;
}

}  // namespace

Digraph::Digraph(int m) : m_(m), out_(static_cast<std::size_t>(m), 0) {
    if (m < 0 || m > 64) throw std::invalid_argument("digraph size must be in 0..64");
}

Digraph Digraph::from_arcs(int m, const std::vector<std::pair<int, int>>& arcs) {
    Digraph d(m);
    for (auto [u, v] : arcs) d.add_arc(u, v);
    return d;
}

void Digraph::add_arc(int from, int to) {
    if (from < 0 || to < 0 || from >= m_ || to >= m_) throw std::out_of_range("arc endpoint out of range");
    out_[from] |= bit(to);
}

int Digraph::out_degree(int v) const { return std::popcount(out_[v]); }

int Digraph::arc_count() const {
    int c = 0;
    for (auto o : out_) c += std::popcount(o);
    return c;
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
    std::vector<std::pair<int, int>> a;
    for (int u = 0; u < m_; ++u) for_each_bit(out_[u], [&](int v) { a.emplace_back(u, v); });
    return a;
}

bool Digraph::symmetric() const {
    for (auto [u, v] : arcs())
        if (!has_arc(v, u)) return false;
    return true;
}

Digraph Digraph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != m_) throw std::invalid_argument("relabeling has wrong size");
    Digraph r(m_);
    for (auto [u, v] : arcs()) r.add_arc(perm[u], perm[v]);
    return r;
}

Digraph figure1(int m) {
    if (m < 3) throw std::invalid_argument("figure1 needs m >= 3");
    Digraph d(m);
    for (int i = 0; i + 1 < m; ++i) d.add_arc(i, i + 1);
    d.add_arc(m - 1, 0);
    d.add_arc(m - 1, 1);
    return d;
}

Digraph figure2(int m) {
    Digraph d = figure1(m);
    d.add_arc(0, 2);
    return d;
}

Digraph cycle_digraph(int m) {
    if (m < 1) throw std::invalid_argument("cycle needs m >= 1");
    Digraph d(m);
    for (int i = 0; i < m; ++i) d.add_arc(i, (i + 1) % m);
    return d;
}

bool strongly_connected(const Digraph& d) {
    if (d.size() == 0) return false;
    std::uint64_t full = all_of(d.size());
    return reach_from(d, 0) == full && reach_from(reversed(d), 0) == full;
}

std::optional<int> girth(const Digraph& d) {
    std::optional<int> best;
    for (int v = 0; v < d.size(); ++v) {
        if (d.has_arc(v, v)) return 1;
        std::vector<int> dist(d.size(), -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (d.has_arc(u, v) && (!best || dist[u] + 1 < *best)) best = dist[u] + 1;
            for_each_bit(d.out(u), [&](int w) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            });
        }
    }
    return best;
}

int cycle_gcd(const Digraph& d) {
    const int m = d.size();
    Digraph r = reversed(d);
    std::uint64_t done = 0;
    int g = 0;
    for (int v = 0; v < m; ++v) {
        if (done & bit(v)) continue;
        std::uint64_t comp = reach_from(d, v) & reach_from(r, v);
        done |= comp;
        // BFS levels inside the component; the period is the gcd of level defects over its arcs.
        std::vector<int> level(m, -1);
        std::queue<int> q;
        level[v] = 0;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for_each_bit(d.out(u) & comp, [&](int w) {
                if (level[w] < 0) {
                    level[w] = level[u] + 1;
                    q.push(w);
                }
            });
        }
        for_each_bit(comp, [&](int u) {
            for_each_bit(d.out(u) & comp, [&](int w) { g = std::gcd(g, std::abs(level[u] + 1 - level[w])); });
        });
    }
    return g;
}

CircuitProfile circuit_profile(const Digraph& d) {
    const int m = d.size();
    if (m > 20) throw std::invalid_argument("circuit_profile supports at most 20 vertices");
    CircuitProfile p;
    p.strongly_connected = strongly_connected(d);
    p.cycle_gcd = cycle_gcd(d);
    p.circuit_lengths.assign(m, 0);

    std::vector<std::uint64_t> pred(m, 0);
    for (auto [u, v] : d.arcs()) pred[v] |= bit(u);

    // Simple paths starting at s through vertices > s: ends[mask] = possible endpoints.
    std::vector<std::uint32_t> ends(std::size_t(1) << m, 0);
    for (int s = 0; s < m; ++s) {
        const std::uint32_t above = static_cast<std::uint32_t>(all_of(m) & ~(bit(s + 1) - 1));
        std::fill(ends.begin(), ends.end(), 0);
        const std::uint32_t start = static_cast<std::uint32_t>(bit(s));
        ends[start] = start;
        for (std::uint32_t mask = start; mask < ends.size(); ++mask) {
            if ((mask & start) == 0 || (mask & (start - 1)) != 0) continue;
            std::uint32_t e = ends[mask];
            if (!e) continue;
            if (e & pred[s]) {
                int len = std::popcount(mask);
                for_each_bit(mask, [&](int v) { p.circuit_lengths[v] |= bit(len); });
            }
            for_each_bit(e, [&](int v) {
                std::uint32_t next = static_cast<std::uint32_t>(d.out(v)) & above & ~mask;
                for_each_bit(next, [&](int w) { ends[mask | bit(w)] |= static_cast<std::uint32_t>(bit(w)); });
            });
        }
    }

    std::uint64_t lengths = 0;
    for (auto l : p.circuit_lengths) lengths |= l;
    if (lengths) p.girth = std::countr_zero(lengths);
    p.access.assign(m, {});
    for_each_bit(lengths, [&](int l) {
        std::uint64_t on = 0;
        for (int v = 0; v < m; ++v)
            if (p.circuit_lengths[v] & bit(l)) on |= bit(v);
        auto dist = distance_to(d, on);
        for (int v = 0; v < m; ++v)
            if (dist[v] >= 0) p.access[v].push_back({dist[v], l});
    });
    return p;
}

bool is_primitive_digraph(const Digraph& d) { return strongly_connected(d) && cycle_gcd(d) == 1; }

int digraph_exponent(const Digraph& d) {
    if (!is_primitive_digraph(d)) throw NotPrimitive("digraph is not primitive");
    const int m = d.size();
    const std::uint64_t full = all_of(m);
    const int cap = m * m - 2 * m + 3;
    std::vector<std::uint64_t> p(m);
    for (int i = 0; i < m; ++i) p[i] = d.out(i);
    for (int k = 1; k <= cap; ++k) {
        if (std::all_of(p.begin(), p.end(), [&](std::uint64_t r) { return r == full; })) return k;
        std::vector<std::uint64_t> next(m, 0);
        for (int i = 0; i < m; ++i) for_each_bit(p[i], [&](int j) { next[i] |= d.out(j); });
        p = std::move(next);
    }
    throw NotPrimitive("boolean powers did not become positive within " + std::to_string(cap) + " steps");
}

int digraph_exponent_layered(const Digraph& d) {
    if (!is_primitive_digraph(d)) throw NotPrimitive("digraph is not primitive");
    const int m = d.size();
    const std::uint64_t full = all_of(m);
    int worst = 0;
    for (int i = 0; i < m; ++i) {
        std::uint64_t layer = d.out(i);
        int k = 1;
        while (layer != full) {
            std::uint64_t next = 0;
            for_each_bit(layer, [&](int j) { next |= d.out(j); });
            layer = next;
            if (++k > m * m) throw NotPrimitive("layering did not saturate");
        }
        worst = std::max(worst, k);
    }
    return worst;
}

std::optional<std::vector<int>> matches_figure(const Digraph& d, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("figure must be 1 or 2");
    const int m = d.size();
    if (m < 3) return std::nullopt;
    const Digraph target = which == 1 ? figure1(m) : figure2(m);
    if (d.arc_count() != target.arc_count()) return std::nullopt;
    for (int a = 0; a < m; ++a) {
        if (d.out_degree(a) != 2) continue;
        std::vector<int> nb;
        for_each_bit(d.out(a), [&](int v) { nb.push_back(v); });
        for (int first = 0; first < 2; ++first) {
            std::vector<int> perm(m, -1);
            perm[a] = m - 1;
            int x = nb[first], y = nb[1 - first];
            if (perm[x] >= 0 || perm[y] >= 0) continue;
            perm[x] = 0;
            perm[y] = 1;
            int cur = y;
            bool ok = true;
            for (int label = 2; label < m - 1 && ok; ++label) {
                if (d.out_degree(cur) != 1) { ok = false; break; }
                int next = std::countr_zero(d.out(cur));
                if (perm[next] >= 0) { ok = false; break; }
                perm[next] = label;
                cur = next;
            }
            if (ok && d.relabeled(perm) == target) return perm;
        }
    }
    return std::nullopt;
}

}  // namespace conelab
