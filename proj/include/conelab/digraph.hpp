#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace conelab {

// Digraph on vertices 0..m-1 stored as out-neighbour bitmasks (m <= 64).  Loops allowed.
class Digraph {
public:
    explicit Digraph(int m = 0);
    static Digraph from_arcs(int m, const std::vector<std::pair<int, int>>& arcs);

    int size() const { return m_; }
    void add_arc(int from, int to);
    bool has_arc(int from, int to) const { return (out_[from] >> to) & 1u; }
    std::uint64_t out(int v) const { return out_[v]; }
    int out_degree(int v) const;
    int arc_count() const;
    std::vector<std::pair<int, int>> arcs() const;
    bool symmetric() const;
    // Digraph with vertex v renamed to perm[v].
    Digraph relabeled(const std::vector<int>& perm) const;

    friend bool operator==(const Digraph& a, const Digraph& b) { return a.m_ == b.m_ && a.out_ == b.out_; }

private:
    int m_;
    std::vector<std::uint64_t> out_;
};

// figure1(m): i -> i+1, m -> 1, m -> 2 (1-based); figure2(m) adds 1 -> 3.
Digraph figure1(int m);
Digraph figure2(int m);
Digraph cycle_digraph(int m);

struct CircuitAccess {
    int w;  // distance to the nearest vertex on a circuit of length l
    int l;
};

struct CircuitProfile {
    bool strongly_connected = false;
    std::optional<int> girth;  // nullopt when acyclic
    int cycle_gcd = 0;         // 0 when acyclic
    std::vector<std::uint64_t> circuit_lengths;      // per vertex: bit l set when it lies on a circuit of length l
    std::vector<std::vector<CircuitAccess>> access;  // per vertex: minimal w for every circuit length
};

bool strongly_connected(const Digraph& d);
std::optional<int> girth(const Digraph& d);
int cycle_gcd(const Digraph& d);
// Requires m <= 20 (circuit membership is found by a subset dynamic program).
CircuitProfile circuit_profile(const Digraph& d);

bool is_primitive_digraph(const Digraph& d);
// Least k with B^k all ones, by iterated boolean products; throws NotPrimitive.
int digraph_exponent(const Digraph& d);
// Same value from per-source BFS layering.
int digraph_exponent_layered(const Digraph& d);

// Relabeling perm with d.relabeled(perm) == figure(m), if one exists.
std::optional<std::vector<int>> matches_figure(const Digraph& d, int which);

}  // namespace conelab
