#pragma once

#include "conelab/numerics.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace conelab {

using Complex = std::complex<double>;

// Roots of h(t) = t^m - c t - (1 - c).
struct HPolySpectrum {
    int m = 0;
    double c = 0;
    std::vector<Complex> roots;       // with multiplicity
    std::vector<double> real_roots;   // ascending, with multiplicity
    std::vector<std::pair<double, double>> conjugate_pairs;  // (r, theta), theta in (0, pi), ascending theta
    bool double_root = false;         // a multiplicity-2 real root was reported
    bool near_double_root = false;    // m odd and |c - c_m| < 1e-6
};

Complex eval_h(int m, double c, Complex t);

// Durand-Kerner for a monic polynomial, descending coefficients with coeffs[0] == 1.
// Throws NonConvergence after the iteration cap.
std::vector<Complex> durand_kerner(const std::vector<Complex>& coeffs, const Tolerance& tol = {},
                                   int max_iter = 500);

HPolySpectrum roots_of_h(int m, double c, const Tolerance& tol = {});

// c_m for odd m: the root in (0,1) of (m-1)^(m-1)/m^m t^m = (t-1)^(m-1).
double c_threshold(int m, const Tolerance& tol = {});

struct GThetaRoot {
    int m = 0;
    double theta = 0;
    double r_theta = 0;
    double c_of_theta = 0;
};

double g_theta(int m, double theta, double t);
// Positive root of g_theta for theta strictly inside (2pi/m, 2pi/(m-1)).
GThetaRoot solve_g_theta(int m, double theta, const Tolerance& tol = {});

// Degree of the minimal polynomial.
int min_poly_degree(const Matrix& a, const Tolerance& tol = {});

// Characteristic polynomial det(tI - A), coefficients in descending order (leading 1 first).
std::vector<Scalar> char_poly(const Matrix& a);

}  // namespace conelab
