#pragma once

#include "conelab/conemap.hpp"
#include "conelab/cone.hpp"

#include <memory>
#include <random>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

// Orthant with the companion matrix of t^n - c t - (1 - c); Exact when c is.
ConeMap simplicial_wielandt(int n, const Scalar& c);

enum class MinimalVariant { Rel2Eq2, Rel3Eq3, Rel3Eq4, Rel5Eq5, Rel2Eq6, Rel1Eq1 };

std::string to_string(MinimalVariant v);
MinimalVariant parse_minimal_variant(const std::string& s);
const std::vector<MinimalVariant>& all_minimal_variants();
// Whether the variant is defined in dimension n (parity).
bool minimal_variant_allows(MinimalVariant v, int n);
long predicted_minimal_gamma(MinimalVariant v, int n);

// x_1..x_n standard basis, x_{n+1} from the variant's relation, A from its equations.
ConeMap minimal_cone_family(int n, MinimalVariant v, const Scalar& alpha, const Scalar& beta);
ConeMap minimal_cone_family(int n, MinimalVariant v);  // alpha = 1, beta = 1/2 or 1

ConeMap ktheta(int m, double theta);
ConeMap regular_polygon(int m);

struct HighDimInstance {
    ConeMap map;
    double c = 0;
    int refinements = 0;
};

// Default c is 0.01 (0.99 when m is odd and n even).  A failed construction moves c toward the
// limit; an instance binary64 cannot resolve moves it away.  At most max_refinements + 1 tries.
HighDimInstance highdim(int m, int n, std::optional<double> c = std::nullopt, int max_refinements = 8);
// Sum of the rays that must lie on the boundary for the highdim exponent argument (0-based indices).
std::vector<int> highdim_boundary_rays(int m, int n);

// Raw generators of the limit cones.
std::vector<Vector> limit_vectors_k0(int m, int n);
PolyhedralCone limit_cone_k0(int m, int n);
PolyhedralCone limit_cone_k1(int m, int n);  // m odd, n even; m - 1 rays

// pos{(1 - alpha) x_1 + alpha x_m, x_1, ..., x_{m-1}} in figure-1 labels, alpha halved toward 1 on failure.
ConeMap figure2_from_figure1(const ConeMap& map, double alpha = 1.05);
// pos{x_2, ..., x_m, A x_m} in figure-2 labels.
ConeMap figure1_from_figure2(const ConeMap& map);

// Parameters of one family instance.  c, alpha, beta are kept as text so rational
// values stay exact ("3/10", "0.5").
struct FamilySpec {
    std::string family;  // simplicial, minimal, ktheta, regular_polygon, highdim, limit_k0, limit_k1, figure2_from_figure1
    int m = 0, n = 0;
    std::optional<std::string> variant;
    std::optional<double> theta;
    std::optional<std::string> c, alpha, beta;
    std::shared_ptr<const FamilySpec> base;  // figure2_from_figure1 source
};

ConeMap build_family(const FamilySpec& spec);

// Random exact cone (n <= max_n, at most max_m generators before redundancy removal) with a
// K-nonnegative map sum c_t x_a u_f^T (ray times facet normal), sometimes plus a multiple of I.
ConeMap random_cone_map(std::mt19937_64& rng, int max_m, int max_n);
// Also covers the limit cones, which carry no map.
PolyhedralCone build_family_cone(const FamilySpec& spec);

}  // namespace conelab
