#include "conelab/conemap.hpp"
#include "conelab/constructions.hpp"
#include "conelab/errors.hpp"
#include "conelab/suites.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
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

double mid_theta(int m) { return std::numbers::pi * (1.0 / m + 1.0 / (m - 1)); }

struct Named {
    std::string label;
    ConeMap map;
};

std::vector<Named> constructed() {
    std::vector<Named> out;
    for (int n = 3; n <= 6; ++n) out.push_back({"simplicial " + std::to_string(n), simplicial_wielandt(n, Scalar::exact(1, 3))});
    for (int m = 3; m <= 8; ++m) out.push_back({"ktheta " + std::to_string(m), ktheta(m, mid_theta(m))});
    for (int n = 3; n <= 6; ++n)
        for (auto v : all_minimal_variants())
            if (minimal_variant_allows(v, n)) out.push_back({to_string(v) + " " + std::to_string(n), minimal_cone_family(n, v)});
    for (int m = 4; m <= 7; ++m)
        for (int n = 3; n <= m; ++n) out.push_back({"highdim " + std::to_string(m) + "," + std::to_string(n), highdim(m, n).map});
    for (int m = 4; m <= 7; ++m) out.push_back({"figure2 " + std::to_string(m), figure2_from_figure1(ktheta(m, mid_theta(m)))});
    return out;
}

}  // namespace

TEST_CASE("verify_map accepts and rejects") {
    CHECK_NOTHROW(verify_map(Matrix::identity(3, ScalarMode::Exact), orthant(3)));
    Matrix neg = Matrix::identity(3, ScalarMode::Exact);
    for (std::size_t i = 0; i < 3; ++i) neg(i, i) = Scalar::exact(-1);
    try {
        verify_map(neg, orthant(3));
        FAIL("expected NotConePreserving");
    } catch (const NotConePreserving& e) {
        CHECK(e.ray == 0);
        CHECK(e.facet >= 0);
    }
    CHECK_THROWS_AS(verify_map(Matrix::identity(2, ScalarMode::Exact), orthant(3)), std::invalid_argument);
}

TEST_CASE("positive matrix on the orthant has exponent one") {
    Matrix a = Matrix::from_rows({ev({1, 2, 1}), ev({1, 1, 1}), ev({3, 1, 1})});
    ConeMap map = verify_map(a, orthant(3));
    for (int i = 0; i < 3; ++i) {
        CHECK(local_exponent(map, i) == 1);
        CHECK(numeric_local_exponent(map, i, 10) == 1);
    }
    ExponentReport r = exponent_report(map);
    CHECK(r.gamma == 1);
    CHECK(r.m_a == 3);
}

TEST_CASE("companion matrices on the orthant") {
    ConeMap three = simplicial_wielandt(3, Scalar::exact(1, 2));
    CHECK(exponent_report(three).gamma == 5);
    ConeMap four = simplicial_wielandt(4, Scalar::exact(2, 5));
    CHECK(local_exponent(four, 0) == 10);
    CHECK(numeric_local_exponent(four, 0, 50) == 10);
    CHECK(exponent_report(four).gamma == 10);
    CHECK(exponent_report(simplicial_wielandt(6, Scalar::exact(1, 2))).gamma == 26);
    CHECK(exponent_report(simplicial_wielandt(3, Scalar::exact(3, 4))).gamma == 5);
}

TEST_CASE("ktheta local exponents descend from the first ray") {
    for (int m = 4; m <= 8; ++m) {
        ConeMap map = ktheta(m, mid_theta(m));
        for (int j = 0; j < m; ++j) {
            CHECK(local_exponent(map, j) == 2 * m - 1 - j);
            CHECK(numeric_local_exponent(map, j, 200) == 2 * m - 1 - j);
        }
        CHECK(matches_figure(map.digraph(), 1));
    }
    CHECK(exponent_report(ktheta(5, 1.35)).gamma == 9);
    CHECK(exponent_report(ktheta(3, 2.5)).gamma == 5);
}

TEST_CASE("minimal cone exponents") {
    CHECK(exponent_report(minimal_cone_family(5, MinimalVariant::Rel2Eq2)).gamma == 21);
    ConeMap eq4 = minimal_cone_family(4, MinimalVariant::Rel3Eq4);
    CHECK(exponent_report(eq4).gamma == 11);
    CHECK(matches_figure(eq4.digraph(), 2));
}

TEST_CASE("regular polygon rotation is irreducible but not primitive") {
    for (int m = 5; m <= 8; ++m) {
        ConeMap map = regular_polygon(m);
        CHECK(is_irreducible(map));
        CHECK_FALSE(is_primitive(map));
        for (int i = 0; i < m; ++i) {
            CHECK_FALSE(local_exponent(map, i).has_value());
            CHECK(smallest_invariant_face(map, i) == map.cone().all_rays());
        }
        ExponentReport r = exponent_report(map);
        CHECK_FALSE(r.gamma.has_value());
        CHECK(r.bounds.empty());
    }
}

TEST_CASE("reducible map") {
    Matrix a = Matrix::from_rows({ev({1, 1, 0}), ev({0, 1, 0}), ev({0, 0, 1})});
    ConeMap map = verify_map(a, orthant(3));
    CHECK_FALSE(is_irreducible(map));
    CHECK_FALSE(is_primitive(map));
    CHECK(smallest_invariant_face(map, 0) == singleton(0));
}

TEST_CASE("highdim with small c has the figure-1 digraph") {
    HighDimInstance h = highdim(5, 3, 0.05);
    CHECK(h.map.digraph() == figure1(5));
}

TEST_CASE("properties on every constructed instance") {
    for (const auto& [label, map] : constructed()) {
        CAPTURE(label);
        const PolyhedralCone& k = map.cone();
        ExponentReport r = exponent_report(map, Execution::Serial);
        ExponentReport rp = exponent_report(map, Execution::Parallel);
        CHECK(r.local_exponents == rp.local_exponents);
        REQUIRE(r.gamma);
        CHECK(bounds_hold(r));

        for (int i = 0; i < k.num_rays(); ++i) {
            CHECK(local_exponent(map, i) == numeric_local_exponent(map, i, 400));
            // Once the iteration reaches K it stays there.
            RaySet f = k.closure(singleton(i));
            for (int step = 0; step < *r.local_exponents[i] + 3; ++step) {
                const RaySet next = map.step(f);
                if (f == k.all_rays()) CHECK(next == f);
                f = next;
            }
        }

        if (is_primitive_digraph(map.digraph())) {
            CHECK(is_primitive(map));
            CHECK(*r.gamma <= digraph_exponent(map.digraph()));
        }

        if (r.figure_match) {
            const int m = k.num_rays();
            PowerRelation pr = fit_power_relation(map.matrix(), m);
            CHECK(pr.c > 0);
            CHECK(pr.d > 0);
            CHECK(pr.residual <= 1e-6 * std::max(1.0, map.matrix().inf_norm()));
            int top = 0;
            for (auto e : r.local_exponents) top += (*e == *r.gamma);
            CHECK(top == 1);
        }

        if (is_irreducible(map)) {
            const auto n = static_cast<std::size_t>(k.dim());
            Matrix b = power(Matrix::identity(n, map.matrix().mode()) + map.matrix(), r.m_a - 1);
            CHECK(is_k_positive(b, k));
        }
    }
}

TEST_CASE("property: random maps respect the bounds and the per-vertex circuit bound") {
    std::mt19937_64 rng(51);
    int primitive = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ConeMap map = random_cone_map(rng, 7, 5);
        ExponentReport r = exponent_report(map, Execution::Serial);
        CHECK(r.primitive == is_primitive(map));
        if (!r.primitive) continue;
        ++primitive;
        // Only primitive maps: roundoff inside an invariant face grows under A otherwise.
        for (int i = 0; i < map.cone().num_rays(); ++i)
            CHECK(local_exponent(map, i) == numeric_local_exponent(map, i, 400));
        CHECK(bounds_hold(r));
        const CircuitProfile p = circuit_profile(map.digraph());
        for (int i = 0; i < map.cone().num_rays(); ++i)
            for (const auto& acc : p.access[static_cast<std::size_t>(i)])
                CHECK(*r.local_exponents[static_cast<std::size_t>(i)] <= acc.w + (r.m_a - 1) * acc.l);
    }
    CHECK(primitive > 20);
}
