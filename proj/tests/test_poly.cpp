#include "conelab/constructions.hpp"
#include "conelab/poly.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace conelab;
using testutil::ev;

TEST_CASE("durand-kerner on a cubic with integer roots") {
    auto roots = durand_kerner({1.0, -6.0, 11.0, -6.0});
    std::vector<double> re;
    for (auto z : roots) {
        CHECK(std::fabs(z.imag()) < 1e-9);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(re[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("m = 3, c = 3/4 has the double root -1/2") {
    CHECK(c_threshold(3) == doctest::Approx(0.75).epsilon(1e-10));
    HPolySpectrum s = roots_of_h(3, 0.75);
    CHECK(s.double_root);
    REQUIRE(s.real_roots.size() == 3);
    CHECK(s.real_roots[0] == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(s.real_roots[1] == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(s.real_roots[2] == doctest::Approx(1.0));
}

TEST_CASE("c_m solves its defining equation") {
    for (int m : {3, 5, 7, 9}) {
        const double c = c_threshold(m);
        const double lhs = std::pow(m - 1.0, m - 1) / std::pow(double(m), m) * std::pow(c, m);
        CHECK(lhs == doctest::Approx(std::pow(c - 1, m - 1)).epsilon(1e-9));
        CHECK(c > 0);
        CHECK(c < 1);
    }
}

TEST_CASE("real root counts of h") {
    for (int m : {4, 6, 8})
        for (double c : {0.1, 0.5, 0.9}) CHECK(roots_of_h(m, c).real_roots.size() == 2);
    const double c5 = c_threshold(5);
    CHECK(roots_of_h(5, c5 / 2).real_roots.size() == 1);
    CHECK(roots_of_h(5, (1 + c5) / 2).real_roots.size() == 3);
}

TEST_CASE("property: roots of h satisfy the modulus inequality") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> cd(0.01, 0.99);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = std::uniform_int_distribution<int>(3, 10)(rng);
        const double c = cd(rng);
        HPolySpectrum s = roots_of_h(m, c);
        CHECK(static_cast<int>(s.roots.size()) == m);
        for (auto z : s.roots) {
            CHECK(std::abs(eval_h(m, c, z)) < 1e-8);
            CHECK(std::pow(std::abs(z), m) <= c * std::abs(z) + (1 - c) + 1e-9);
        }
        for (auto [r, th] : s.conjugate_pairs) {
            CHECK(th > 0);
            CHECK(th < std::numbers::pi);
            CHECK(r <= 1 + 1e-12);
        }
    }
}

TEST_CASE("g_theta root round trip") {
    for (int m = 3; m <= 9; ++m)
        for (double th : {0.3, 0.5, 0.7}) {
            const double lo = 2 * std::numbers::pi / m, hi = 2 * std::numbers::pi / (m - 1);
            GThetaRoot g = solve_g_theta(m, lo + th * (hi - lo));
            CHECK(g.r_theta > 0);
            CHECK(g.r_theta < 1);
            CHECK(std::fabs(g_theta(m, g.theta, g.r_theta)) < 1e-9);
            CHECK(g.c_of_theta > 0);
            CHECK(g.c_of_theta < 1);
        }
    CHECK_THROWS_AS(solve_g_theta(5, 0.1), std::invalid_argument);
}

TEST_CASE("c(theta) is monotone for m = 6") {
    const double lo = 2 * std::numbers::pi / 6, hi = 2 * std::numbers::pi / 5;
    std::vector<double> cs;
    for (int k = 1; k < 40; ++k) cs.push_back(solve_g_theta(6, lo + (hi - lo) * k / 40).c_of_theta);
    const bool up = cs.back() > cs.front();
    for (std::size_t i = 1; i < cs.size(); ++i) CHECK((cs[i] > cs[i - 1]) == up);
}

TEST_CASE("characteristic polynomial of the companion matrix") {
    ConeMap map = simplicial_wielandt(3, Scalar::exact(1, 2));
    auto p = char_poly(map.matrix());
    REQUIRE(p.size() == 4);
    CHECK(p[0] == Scalar::exact(1));
    CHECK(p[1] == Scalar::exact(0));
    CHECK(p[2] == Scalar::exact(-1, 2));
    CHECK(p[3] == Scalar::exact(-1, 2));
}

TEST_CASE("characteristic polynomial of the rotation-scaling map") {
    const double th = 0.5 * (2 * std::numbers::pi / 7 + 2 * std::numbers::pi / 6);
    ConeMap map = ktheta(7, th);
    const double r = solve_g_theta(7, th).r_theta;
    auto p = char_poly(map.matrix());
    // (t^2 - 2 r cos(theta) t + r^2)(t - 1)
    const double b = -2 * r * std::cos(th), c = r * r;
    const std::vector<double> want = {1, b - 1, c - b, -c};
    REQUIRE(p.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(p[i].to_double() == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("property: minimal polynomial degree counts distinct eigenvalues") {
    // A = P D P^-1 with an integer unimodular P, so A is diagonalizable over Q.
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 5)(rng);
        std::vector<long> diag;
        for (int i = 0; i < n; ++i) diag.push_back(std::uniform_int_distribution<int>(-2, 2)(rng));
        std::vector<long> distinct = diag;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        Matrix p = Matrix::identity(static_cast<std::size_t>(n), ScalarMode::Exact);
        Matrix pinv = p;
        for (int i = 0; i + 1 < n; ++i) {
            // Elementary row operations keep P unimodular with an easy inverse.
            const long k = std::uniform_int_distribution<int>(-2, 2)(rng);
            Matrix e = Matrix::identity(static_cast<std::size_t>(n), ScalarMode::Exact);
            Matrix einv = e;
            e(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = Scalar::exact(k);
            einv(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = Scalar::exact(-k);
            p = p * e;
            pinv = einv * pinv;
        }
        Matrix d(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ScalarMode::Exact);
        for (int i = 0; i < n; ++i) d(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Scalar::exact(diag[i]);
        CHECK(p * pinv == Matrix::identity(static_cast<std::size_t>(n), ScalarMode::Exact));
        CHECK(min_poly_degree(p * d * pinv) == static_cast<int>(distinct.size()));
    }
}

TEST_CASE("jordan block has full minimal polynomial") {
    Matrix j = Matrix::from_rows({ev({2, 1, 0}), ev({0, 2, 1}), ev({0, 0, 2})});
    CHECK(min_poly_degree(j) == 3);
    Matrix k = Matrix::from_rows({ev({2, 1, 0}), ev({0, 2, 0}), ev({0, 0, 2})});
    CHECK(min_poly_degree(k) == 2);
}
