#include "conelab/digraph.hpp"
#include "conelab/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace conelab;

namespace {

Digraph from_mask(int m, std::uint64_t mask) {
    Digraph d(m);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            if (mask >> (u * m + v) & 1u) d.add_arc(u, v);
    return d;
}

// Sets of vertices reachable by walks of length exactly k; first k >= 1 where every set is full.
std::optional<int> exponent_oracle(const Digraph& d) {
    const int m = d.size();
    const std::uint64_t full = (std::uint64_t(1) << m) - 1;
    std::vector<std::uint64_t> reach(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) reach[v] = d.out(v);
    for (int k = 1; k <= (m - 1) * (m - 1) + 1; ++k) {
        if (std::all_of(reach.begin(), reach.end(), [&](auto r) { return r == full; })) return k;
        for (auto& r : reach) {
            std::uint64_t next = 0;
            for (int u = 0; u < m; ++u)
                if (r >> u & 1u) next |= d.out(u);
            r = next;
        }
    }
    return std::nullopt;
}

// Bit l of on[v] is set when v lies on a simple circuit of length l; by permutation search.
std::vector<std::uint64_t> circuit_oracle(const Digraph& d) {
    const int m = d.size();
    std::vector<std::uint64_t> on(static_cast<std::size_t>(m), 0);
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> vs;
        for (int v = 0; v < m; ++v)
            if (mask >> v & 1) vs.push_back(v);
        std::sort(vs.begin() + 1, vs.end());
        do {
            bool ok = true;
            for (std::size_t i = 0; i < vs.size() && ok; ++i) ok = d.has_arc(vs[i], vs[(i + 1) % vs.size()]);
            if (ok)
                for (int v : vs) on[v] |= std::uint64_t(1) << vs.size();
        } while (std::next_permutation(vs.begin() + 1, vs.end()));
    }
    return on;
}

std::vector<int> distances_from(const Digraph& d, int s) {
    std::vector<int> dist(static_cast<std::size_t>(d.size()), -1);
    std::vector<int> queue = {s};
    dist[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (int v = 0; v < d.size(); ++v)
            if (d.has_arc(queue[h], v) && dist[v] < 0) {
                dist[v] = dist[queue[h]] + 1;
                queue.push_back(v);
            }
    return dist;
}

void check_against_oracles(const Digraph& d) {
    const int m = d.size();
    const auto on = circuit_oracle(d);
    const CircuitProfile p = circuit_profile(d);
    std::optional<int> g;
    int gcd = 0;
    for (int v = 0; v < m; ++v) {
        CHECK(p.circuit_lengths[v] == on[v]);
        for (int l = 1; l <= m; ++l)
            if (on[v] >> l & 1u) {
                g = g ? std::min(*g, l) : l;
                gcd = std::gcd(gcd, l);
            }
    }
    CHECK(p.girth == g);
    CHECK(girth(d) == g);
    bool strong = true;
    for (int v = 0; v < m; ++v) {
        auto dist = distances_from(d, v);
        strong = strong && std::none_of(dist.begin(), dist.end(), [](int x) { return x < 0; });
        for (int l = 1; l <= m; ++l) {
            int best = -1;
            for (int u = 0; u < m; ++u)
                if ((on[u] >> l & 1u) && dist[u] >= 0 && (best < 0 || dist[u] < best)) best = dist[u];
            auto it = std::find_if(p.access[v].begin(), p.access[v].end(), [&](const CircuitAccess& a) { return a.l == l; });
            if (best < 0) CHECK(it == p.access[v].end());
            else {
                REQUIRE(it != p.access[v].end());
                CHECK(it->w == best);
            }
        }
    }
    CHECK(strongly_connected(d) == strong);
    if (strong) CHECK(cycle_gcd(d) == gcd);
    const auto e = exponent_oracle(d);
    CHECK(is_primitive_digraph(d) == e.has_value());
    if (e) {
        CHECK(digraph_exponent(d) == *e);
        CHECK(digraph_exponent_layered(d) == *e);
    } else {
        CHECK_THROWS_AS(digraph_exponent(d), NotPrimitive);
    }
}

}  // namespace

TEST_CASE("figure digraph arcs") {
    Digraph f1 = figure1(4);
    CHECK(f1.arc_count() == 5);
    CHECK(f1.has_arc(0, 1));
    CHECK(f1.has_arc(2, 3));
    CHECK(f1.has_arc(3, 0));
    CHECK(f1.has_arc(3, 1));
    Digraph f2 = figure2(4);
    CHECK(f2.arc_count() == 6);
    CHECK(f2.has_arc(0, 2));
    CHECK(cycle_digraph(5).arc_count() == 5);
}

TEST_CASE("figure digraph exponents and girths") {
    for (int m = 3; m <= 12; ++m) {
        CHECK(digraph_exponent(figure1(m)) == m * m - 2 * m + 2);
        CHECK(digraph_exponent_layered(figure1(m)) == m * m - 2 * m + 2);
        CHECK(girth(figure1(m)) == m - 1);
        CHECK(girth(figure2(m)) == m - 1);
        CHECK_FALSE(is_primitive_digraph(cycle_digraph(m)));
    }
}

TEST_CASE("exhaustive small digraphs against brute-force oracles") {
    for (int m = 1; m <= 3; ++m)
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (m * m)); ++mask) check_against_oracles(from_mask(m, mask));
}

TEST_CASE("property: random digraphs on four and five vertices") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1500; ++trial) {
        const int m = trial % 2 ? 4 : 5;
        std::uint64_t mask = rng() & ((std::uint64_t(1) << (m * m)) - 1);
        // Thin out loops and arcs so non-primitive cases stay common.
        mask &= rng() | rng();
        check_against_oracles(from_mask(m, mask));
    }
}

TEST_CASE("property: matches_figure finds relabeled copies") {
    std::mt19937_64 rng(42);
    for (int m = 3; m <= 9; ++m)
        for (int which : {1, 2}) {
            std::vector<int> perm(static_cast<std::size_t>(m));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            Digraph base = which == 1 ? figure1(m) : figure2(m);
            Digraph shifted = base.relabeled(perm);
            auto found = matches_figure(shifted, which);
            REQUIRE(found);
            CHECK(shifted.relabeled(*found) == base);
            CHECK_FALSE(matches_figure(shifted, 3 - which));
        }
    CHECK_FALSE(matches_figure(cycle_digraph(5), 1));
}

TEST_CASE("symmetric digraphs") {
    Digraph d = Digraph::from_arcs(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    CHECK(d.symmetric());
    CHECK_FALSE(figure1(3).symmetric());
}
