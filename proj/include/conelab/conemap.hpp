#pragma once

#include "conelab/cone.hpp"
#include "conelab/digraph.hpp"
#include "conelab/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conelab {

// A square matrix together with a polyhedral cone it maps into itself.
class ConeMap {
public:
    const Matrix& matrix() const { return a_; }
    const PolyhedralCone& cone() const { return k_; }
    // Phi(A x_i) as a ray set, per extreme ray.
    const std::vector<RaySet>& image_faces() const { return images_; }
    const Digraph& digraph() const { return digraph_; }
    int minpoly_degree() const { return m_a_; }

    // Rays of Phi(A F) for the face with ray set f.
    RaySet step(RaySet f) const;

private:
    friend ConeMap verify_map(const Matrix&, const PolyhedralCone&);
    Matrix a_;
    PolyhedralCone k_;
    std::vector<RaySet> images_;
    Digraph digraph_;
    int m_a_ = 0;
};

// Checks A x_i in K for every extreme ray; throws NotConePreserving with a witness facet.
ConeMap verify_map(const Matrix& a, const PolyhedralCone& k);

const Digraph& access_digraph(const ConeMap& map);

bool is_irreducible(const ConeMap& map);
// Smallest A-invariant face containing ray i.
RaySet smallest_invariant_face(const ConeMap& map, int i);
bool is_primitive(const ConeMap& map);

// nullopt means infinite.
using LocalExponent = std::optional<int>;

// Face iteration F_0 = Phi(x_i), F_{k+1} = Phi(A F_k).
LocalExponent local_exponent(const ConeMap& map, int i);
// Power iteration v <- A v / |A v|_inf in binary64, first k with v strictly interior
// (nullopt when none up to k_max).
LocalExponent numeric_local_exponent(const ConeMap& map, int i, int k_max);

struct Bound {
    std::string name;
    long value;
};

struct ExponentReport {
    bool primitive = false;
    std::vector<LocalExponent> local_exponents;
    LocalExponent gamma;
    int m = 0, n = 0, m_a = 0;
    std::optional<int> girth;
    std::vector<Bound> bounds;   // only evaluated for primitive maps
    std::optional<std::string> tight_bound;
    std::optional<int> figure_match;
    std::optional<int> digraph_exponent;  // when the access digraph is primitive
};

ExponentReport exponent_report(const ConeMap& map, Execution exec = Execution::Parallel);

// B x_i in int K for every extreme ray.
bool is_k_positive(const Matrix& b, const PolyhedralCone& k);

struct PowerRelation {
    double c = 0, d = 0, residual = 0;
};

// Least-squares fit of A^p = c A + d I in binary64; residual is the max-norm misfit.
PowerRelation fit_power_relation(const Matrix& a, int p);

}  // namespace conelab
