#include "conelab/cone.hpp"
#include "conelab/constructions.hpp"
#include "conelab/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace conelab;
using testutil::ev;

namespace {

PolyhedralCone orthant(int n) {
    std::vector<Vector> g;
    for (int i = 0; i < n; ++i) {
        Vector v = zeros(static_cast<std::size_t>(n), ScalarMode::Exact);
        v[static_cast<std::size_t>(i)] = Scalar::exact(1);
        g.push_back(v);
    }
    return build_cone(g);
}

// Random pointed full cone with integer generators on the slab x_n in [1, 3].
PolyhedralCone random_cone(std::mt19937_64& rng, int n, int count) {
    while (true) {
        std::vector<Vector> g;
        for (int i = 0; i < count; ++i) {
            Vector v = testutil::random_int_vector(rng, n - 1, -3, 3);
            v.push_back(Scalar::exact(std::uniform_int_distribution<int>(1, 3)(rng)));
            g.push_back(v);
        }
        try {
            return build_cone(g, Tolerance{}, Execution::Serial);
        } catch (const NotFull&) {
        }
    }
}

// Facets whose normals vanish on every ray of s, intersected; direct from the dot products.
RaySet closure_oracle(const PolyhedralCone& k, RaySet s) {
    RaySet out = k.all_rays();
    for (const auto& f : k.facets()) {
        bool holds = true;
        for (int i : members(s)) holds = holds && dot(f.normal, k.ray(i)).exact_zero();
        if (!holds) continue;
        RaySet on = 0;
        for (int i = 0; i < k.num_rays(); ++i)
            if (dot(f.normal, k.ray(i)).exact_zero()) on |= singleton(i);
        out &= on;
    }
    return out;
}

// Rays i, j lie in the same summand iff no split of the rays into two parts with
// complementary spans separates them.
std::vector<RaySet> decompose_oracle(const PolyhedralCone& k) {
    const int m = k.num_rays();
    std::vector<RaySet> splits;
    for (RaySet a = 1; a + 1 < full_set(m); ++a) {
        if (!contains(a, 0)) continue;
        std::vector<Vector> ra, rb;
        for (int i = 0; i < m; ++i) (contains(a, i) ? ra : rb).push_back(k.ray(i));
        if (rank(ra) + rank(rb) == k.dim()) splits.push_back(a);
    }
    std::vector<RaySet> parts;
    RaySet done = 0;
    for (int i = 0; i < m; ++i) {
        if (contains(done, i)) continue;
        RaySet part = 0;
        for (int j = 0; j < m; ++j) {
            bool together = std::all_of(splits.begin(), splits.end(),
                                        [&](RaySet a) { return contains(a, i) == contains(a, j); });
            if (together) part |= singleton(j);
        }
        parts.push_back(part);
        done |= part;
    }
    return parts;
}

std::vector<RaySet> sorted(std::vector<RaySet> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("orthant facets") {
    PolyhedralCone k = orthant(3);
    CHECK(k.num_rays() == 3);
    REQUIRE(k.facets().size() == 3);
    for (const auto& f : k.facets()) CHECK(popcount(f.incidence) == 2);
    CHECK(k.simplicial());
}

TEST_CASE("cone over a square") {
    PolyhedralCone k = build_cone({ev({1, 0, 1}), ev({0, 1, 1}), ev({-1, 0, 1}), ev({0, -1, 1})});
    REQUIRE(k.facets().size() == 4);
    for (const auto& f : k.facets()) {
        CHECK(popcount(f.incidence) == 2);
        for (int i = 0; i < 4; ++i) CHECK((dot(f.normal, k.ray(i)).exact_sign() == 0) == contains(f.incidence, i));
    }
    CHECK(neighborly(k, 0, 1));
    CHECK_FALSE(neighborly(k, 0, 2));
}

TEST_CASE("redundant and repeated generators are dropped") {
    PolyhedralCone k = build_cone({ev({1, 0, 0}), ev({2, 0, 0}), ev({0, 1, 0}), ev({1, 1, 1}), ev({0, 0, 1}), ev({0, 0, 0})});
    CHECK(k.num_rays() == 3);
    CHECK(k.ray(0) == ev({1, 0, 0}));
    CHECK(k.ray(1) == ev({0, 1, 0}));
    CHECK(k.ray(2) == ev({0, 0, 1}));
}

TEST_CASE("cone errors") {
    CHECK_THROWS_AS(build_cone({ev({1, 0}), ev({-1, 0}), ev({0, 1})}), NotPointed);
    CHECK_THROWS_AS(build_cone({ev({1, 0, 0}), ev({0, 1, 0})}), NotFull);
    std::vector<Vector> many;
    for (int j = 0; j < 20; ++j) {
        const double t = 2 * 3.141592653589793 * j / 20;
        many.push_back(testutil::fv({std::cos(t), std::sin(t), 1.0}));
    }
    CHECK_THROWS_AS(build_cone(many), TooLarge);
}

TEST_CASE("classify_point on the orthant") {
    PolyhedralCone k = orthant(3);
    CHECK(classify_point(k, ev({1, 1, 1})).kind == PointKind::Interior);
    auto b = classify_point(k, ev({1, 0, 2}));
    CHECK(b.kind == PointKind::Boundary);
    CHECK(b.face.rays == (singleton(0) | singleton(2)));
    CHECK(classify_point(k, ev({-1, 0, 0})).kind == PointKind::Outside);
    CHECK_THROWS_AS(face_generated_by(k, ev({0, -1, 0})), PointOutside);
    Face f = face_generated_by(k, singleton(1));
    CHECK(f.rays == singleton(1));
    CHECK(f.dim == 1);
}

TEST_CASE("ktheta cross-section is a polygon") {
    for (int m = 4; m <= 8; ++m) {
        const double th = 0.5 * (2 * 3.141592653589793 / m + 2 * 3.141592653589793 / (m - 1));
        const ConeMap map = ktheta(m, th);
        const PolyhedralCone& k = map.cone();
        REQUIRE(k.num_rays() == m);
        CHECK(static_cast<int>(k.facets().size()) == m);
        for (int i = 0; i < m; ++i) {
            int count = 0;
            for (int j = 0; j < m; ++j) count += (j != i && neighborly(k, i, j));
            CHECK(count == 2);
        }
        CHECK(neighborly(k, 0, m - 1));
        for (int i = 0; i + 1 < m; ++i) CHECK(neighborly(k, i, i + 1));
    }
}

TEST_CASE("property: closure is a closure operator and matches the facet oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 4)(rng);
        PolyhedralCone k = random_cone(rng, n, std::uniform_int_distribution<int>(n, 7)(rng));
        const RaySet all = k.all_rays();
        for (RaySet s = 0; s <= all; ++s) {
            const RaySet c = k.closure(s);
            CHECK((c & s) == s);
            CHECK(k.closure(c) == c);
            CHECK(c == closure_oracle(k, s));
            for (int i = 0; i < k.num_rays(); ++i) CHECK((k.closure(s | singleton(i)) & c) == c);
            if (s != 0) {
                Vector sum = zeros(static_cast<std::size_t>(n), ScalarMode::Exact);
                for (int i : members(s)) sum = add(sum, k.ray(i));
                auto pc = classify_point(k, sum);
                CHECK(pc.face.rays == c);
                CHECK((pc.kind == PointKind::Interior) == (c == all));
            }
        }
        auto faces = enumerate_faces(k);
        for (RaySet f : faces) CHECK(k.closure(f) == f);
    }
}

TEST_CASE("property: extreme rays survive a rebuild and facets are dual") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 5)(rng);
        PolyhedralCone k = random_cone(rng, n, std::uniform_int_distribution<int>(n, 8)(rng));
        PolyhedralCone again = build_cone(k.rays());
        CHECK(again.rays() == k.rays());
        for (const auto& f : k.facets()) {
            std::vector<Vector> on;
            for (int i : members(f.incidence)) on.push_back(k.ray(i));
            CHECK(rank(on) == n - 1);
            CHECK(face_dim(k, f.incidence) == n - 1);
        }
        if (k.facets().size() > static_cast<std::size_t>(kMaxRays)) continue;
        std::vector<Vector> normals;
        for (const auto& f : k.facets()) normals.push_back(f.normal);
        PolyhedralCone dual = build_cone(normals);
        CHECK(dual.num_rays() == static_cast<int>(k.facets().size()));
        CHECK(static_cast<int>(dual.facets().size()) == k.num_rays());
    }
}

TEST_CASE("property: decompose matches the split search") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        // Direct sum of two random cones, mixed by a unimodular change of basis.
        const int n1 = std::uniform_int_distribution<int>(1, 3)(rng);
        const int n2 = std::uniform_int_distribution<int>(1, 3)(rng);
        const int n = n1 + n2;
        auto part = [&](int d) {
            if (d == 1) return std::vector<Vector>{ev({1})};
            return random_cone(rng, d, std::uniform_int_distribution<int>(d, d + 2)(rng)).rays();
        };
        std::vector<Vector> gens;
        const bool split = trial % 4 != 0;
        for (const auto& r : part(n1)) {
            Vector v = r;
            v.resize(static_cast<std::size_t>(n), Scalar::exact(0));
            gens.push_back(v);
        }
        for (const auto& r : part(n2)) {
            Vector v = zeros(static_cast<std::size_t>(n1), ScalarMode::Exact);
            v.insert(v.end(), r.begin(), r.end());
            gens.push_back(v);
        }
        if (!split) gens.push_back(std::vector<Scalar>(static_cast<std::size_t>(n), Scalar::exact(1)));
        Matrix p = Matrix::identity(static_cast<std::size_t>(n), ScalarMode::Exact);
        for (int i = 0; i + 1 < n; ++i) p(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = Scalar::exact(trial % 3 - 1);
        for (auto& g : gens) g = p.apply(g);
        PolyhedralCone k;
        try {
            k = build_cone(gens, Tolerance{}, Execution::Serial);
        } catch (const NotPointed&) {
            continue;
        }
        CHECK(sorted(decompose(k)) == sorted(decompose_oracle(k)));
        if (split) CHECK(decompose(k).size() >= 2);
    }
    CHECK(decompose(orthant(4)).size() == 4);
}

TEST_CASE("classify_minimal examples") {
    SUBCASE("type (3,3)") {
        PolyhedralCone k = build_cone({ev({1, 0, 0, 0, 0}), ev({0, 1, 0, 0, 0}), ev({0, 0, 1, 0, 0}), ev({0, 0, 0, 1, 0}),
                                       ev({0, 0, 0, 0, 1}), ev({1, 1, 1, -1, -1})});
        auto c = classify_minimal(k);
        CHECK(c.p == 3);
        CHECK(c.q == 3);
        CHECK(c.d == 0);
        CHECK(c.balanced);
        CHECK_FALSE(c.decomposable);
        CHECK(c.relation[0].exact_sign() > 0);
    }
    SUBCASE("type (2,3)") {
        PolyhedralCone k = build_cone({ev({1, 0, 0, 0}), ev({0, 1, 0, 0}), ev({0, 0, 1, 0}), ev({0, 0, 0, 1}), ev({1, 1, -1, -1})});
        auto c = classify_minimal(k);
        CHECK(c.p == 2);
        CHECK(c.q == 3);
        CHECK(c.balanced);
    }
    SUBCASE("one ray outside the relation") {
        PolyhedralCone k = build_cone({ev({1, 0, 0, 0}), ev({0, 1, 0, 0}), ev({0, 0, 1, 0}), ev({0, 0, 0, 1}), ev({1, -1, 1, 0})});
        auto c = classify_minimal(k);
        CHECK(c.d == 1);
        CHECK(c.decomposable);
        CHECK(c.p == 2);
        CHECK(c.q == 2);
        CHECK(decompose(k).size() == 2);
    }
    CHECK_THROWS_AS(classify_minimal(orthant(3)), NotMinimal);
}
