#pragma once

#include "conelab/numerics.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace conelab {

// Bit i set <=> extreme ray i belongs to the set.  Cones have at most 16 rays.
using RaySet = std::uint32_t;

inline bool contains(RaySet s, int i) { return (s >> i) & 1u; }
inline int popcount(RaySet s) { return std::popcount(s); }
inline RaySet singleton(int i) { return RaySet(1) << i; }
inline RaySet full_set(int m) { return m >= 32 ? ~RaySet(0) : (RaySet(1) << m) - 1; }
std::vector<int> members(RaySet s);

enum class Execution { Serial, Parallel };

struct Facet {
    Vector normal;      // <normal, x_i> >= 0 on every ray; unit 2-norm (Float) or primitive integer (Exact)
    RaySet incidence;   // rays on the facet
};

struct Face {
    RaySet rays = 0;
    int dim = 0;
};

constexpr int kMaxRays = 16;
constexpr int kMaxDim = 10;

class PolyhedralCone {
public:
    int dim() const { return n_; }
    int num_rays() const { return static_cast<int>(rays_.size()); }
    const std::vector<Vector>& rays() const { return rays_; }
    const Vector& ray(int i) const { return rays_[static_cast<std::size_t>(i)]; }
    const std::vector<Facet>& facets() const { return facets_; }
    ScalarMode mode() const { return mode_; }
    const Tolerance& tol() const { return tol_; }
    RaySet all_rays() const { return full_set(num_rays()); }
    bool simplicial() const { return num_rays() == n_; }

    // Rays of the smallest face containing the given rays.
    RaySet closure(RaySet s) const;
    // Facets (by index) whose incidence contains s.
    std::vector<int> facets_containing(RaySet s) const;

private:
    friend PolyhedralCone build_cone(const std::vector<Vector>&, const Tolerance&, Execution);
    int n_ = 0;
    ScalarMode mode_ = ScalarMode::Exact;
    Tolerance tol_;
    std::vector<Vector> rays_;
    std::vector<Facet> facets_;
};

// Redundancy removal, pointed/full checks, facet enumeration.  Scalar mode follows the
// generators.  Throws NotPointed, NotFull, TooLarge.
PolyhedralCone build_cone(const std::vector<Vector>& generators, const Tolerance& tol = {},
                          Execution exec = Execution::Parallel);
PolyhedralCone build_cone(const std::vector<Vector>& generators, ScalarMode mode, const Tolerance& tol = {},
                          Execution exec = Execution::Parallel);

Vector convert(const Vector& v, ScalarMode mode);

// Facets of pos(rays) for pairwise non-proportional extreme rays spanning R^n, found by
// scanning (n-1)-subsets.  Sorted by incidence mask.
std::vector<Facet> enumerate_facets(const std::vector<Vector>& rays, const Tolerance& tol,
                                    Execution exec = Execution::Parallel);

bool proportional(const Vector& a, const Vector& b, const Tolerance& tol = {});

enum class PointKind { Interior, Boundary, Outside };

struct PointClass {
    PointKind kind = PointKind::Outside;
    Face face;  // Phi(v) for Interior/Boundary
};

PointClass classify_point(const PolyhedralCone& k, const Vector& v);
Face face_generated_by(const PolyhedralCone& k, RaySet rays);
Face face_generated_by(const PolyhedralCone& k, const Vector& point);  // throws PointOutside
int face_dim(const PolyhedralCone& k, RaySet rays);
bool neighborly(const PolyhedralCone& k, int i, int j);

// All faces (ray sets, including the zero face and K itself), ascending.  Throws TooLarge beyond cap.
std::vector<RaySet> enumerate_faces(const PolyhedralCone& k, std::size_t cap = 4096);

// Indecomposable direct summands, each a set of rays; one entry when K is indecomposable.
std::vector<RaySet> decompose(const PolyhedralCone& k);

struct MinimalConeClass {
    int n = 0;
    bool decomposable = false;
    int d = 0;  // rays absent from the relation
    int p = 0, q = 0;
    bool balanced = false;
    Vector relation;  // sum relation[i] x_i = 0, first nonzero entry positive
};

MinimalConeClass classify_minimal(const PolyhedralCone& k);  // throws NotMinimal

}  // namespace conelab
