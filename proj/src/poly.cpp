#include "conelab/poly.hpp"

#include "conelab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

Complex horner(const std::vector<Complex>& coeffs, Complex t) {
    Complex v = 0;
    for (const auto& a : coeffs) v = v * t + a;
    return v;
}

std::vector<Complex> derivative(const std::vector<Complex>& coeffs) {
    std::vector<Complex> d;
    int deg = static_cast<int>(coeffs.size()) - 1;
    for (int i = 0; i < deg; ++i) d.push_back(coeffs[i] * double(deg - i));
    return d;
}

void newton_polish(const std::vector<Complex>& coeffs, Complex& z, int steps = 4) {
    auto d = derivative(coeffs);
    for (int s = 0; s < steps; ++s) {
        Complex f = horner(coeffs, z), df = horner(d, z);
        if (std::abs(df) == 0.0) return;
        Complex next = z - f / df;
        if (std::abs(horner(coeffs, next)) >= std::abs(f)) return;
        z = next;
    }
}

std::vector<Complex> h_coeffs(int m, double c) {
    std::vector<Complex> co(m + 1, 0.0);
    co[0] = 1.0;
    co[m - 1] = -c;
    co[m] = -(1.0 - c);
    return co;
}

// Synthetic division by (t - r); drops the remainder.
std::vector<Complex> deflate(const std::vector<Complex>& coeffs, Complex r) {
    std::vector<Complex> q;
    Complex acc = 0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        acc = acc * r + coeffs[i];
        q.push_back(acc);
    }
    return q;
}

}  // namespace

Complex eval_h(int m, double c, Complex t) { return std::pow(t, m) - c * t - (1.0 - c); }

std::vector<Complex> durand_kerner(const std::vector<Complex>& coeffs, const Tolerance& tol, int max_iter) {
    if (coeffs.empty() || coeffs[0] != Complex(1.0))
        throw std::invalid_argument("durand_kerner needs a monic polynomial");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<Complex> z(deg);
    const double offset = 1.0 / std::numbers::sqrt2;
    for (int k = 0; k < deg; ++k) z[k] = std::polar(0.9, 2 * std::numbers::pi * k / deg + offset);
    bool converged = deg == 0;
    for (int it = 0; it < max_iter && !converged; ++it) {
        double step = 0;
        for (int i = 0; i < deg; ++i) {
            Complex den = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= z[i] - z[j];
            Complex delta = horner(coeffs, z[i]) / den;
            z[i] -= delta;
            step = std::max(step, std::abs(delta));
        }
        converged = step <= tol.eps_root;
    }
    for (auto& r : z) newton_polish(coeffs, r);
    if (!converged) {
        for (const auto& r : z)
            if (std::abs(horner(coeffs, r)) > 10 * tol.eps_root)
                throw NonConvergence("Durand-Kerner did not converge");
    }
    return z;
}

HPolySpectrum roots_of_h(int m, double c, const Tolerance& tol) {
    if (m < 3) throw std::invalid_argument("roots_of_h needs m >= 3");
    if (!(c > 0 && c < 1)) throw std::invalid_argument("roots_of_h needs 0 < c < 1");
    HPolySpectrum s;
    s.m = m;
    s.c = c;
    auto co = h_coeffs(m, c);
    std::vector<Complex> found;
    if (m % 2 == 1) {
        double cm = c_threshold(m, tol);
        s.near_double_root = std::fabs(c - cm) < 1e-6;
        if (std::fabs(c - cm) <= tol.eps_root) {
            // Double root at the negative critical point t^(m-1) = c/m.
            double t0 = -std::pow(c / m, 1.0 / (m - 1));
            auto q = deflate(deflate(deflate(co, 1.0), t0), t0);
            found = {1.0, t0, t0};
            if (q.size() > 1) {
                for (auto r : durand_kerner(q, tol)) {
                    newton_polish(co, r);
                    found.push_back(r);
                }
            }
            s.double_root = true;
        }
    }
    if (found.empty()) found = durand_kerner(co, tol);

    const double imag_tol = 1e3 * tol.eps_root;
    std::vector<Complex> upper, lower;
    for (auto& r : found) {
        if (std::fabs(r.imag()) <= imag_tol * (1 + std::abs(r))) {
            r = Complex(r.real(), 0.0);
            s.real_roots.push_back(r.real());
        } else if (r.imag() > 0) {
            upper.push_back(r);
        } else {
            lower.push_back(r);
        }
    }
    if (upper.size() != lower.size()) throw NonConvergence("unpaired complex roots of h");
    std::sort(s.real_roots.begin(), s.real_roots.end());
    std::sort(upper.begin(), upper.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    std::vector<bool> used(lower.size(), false);
    for (const auto& z : upper) {
        std::size_t best = lower.size();
        double dist = 0;
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(lower[j] - std::conj(z));
            if (best == lower.size() || d < dist) best = j, dist = d;
        }
        if (dist > imag_tol) throw NonConvergence("conjugate pairing failed");
        used[best] = true;
        s.conjugate_pairs.emplace_back(std::abs(z), std::arg(z));
    }
    std::sort(s.conjugate_pairs.begin(), s.conjugate_pairs.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    s.roots = found;
    return s;
}

double c_threshold(int m, const Tolerance& tol) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("c_threshold needs odd m >= 3");
    const double alpha = std::exp((m - 1) * std::log(double(m - 1)) - m * std::log(double(m)));
    auto f = [&](double t) { return alpha * std::pow(t, m) - std::pow(t - 1, m - 1); };
    double lo = 1e-12, hi = 1 - 1e-12;
    while (hi - lo > tol.eps_root) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double g_theta(int m, double theta, double t) {
    double s = std::sin(theta);
    return std::sin((m - 1) * theta) / s * std::pow(t, m) - std::sin(m * theta) / s * std::pow(t, m - 1) + 1.0;
}

GThetaRoot solve_g_theta(int m, double theta, const Tolerance& tol) {
    if (m < 3) throw std::invalid_argument("solve_g_theta needs m >= 3");
    const double lo_theta = 2 * std::numbers::pi / m, hi_theta = 2 * std::numbers::pi / (m - 1);
    if (!(theta > lo_theta && theta < hi_theta))
        throw std::invalid_argument("theta outside (2pi/m, 2pi/(m-1))");
    if (g_theta(m, theta, 1.0) >= 0) throw NonConvergence("g_theta(1) is not negative");
    double lo = 0, hi = 1;
    while (hi - lo > tol.eps_root) {
        double mid = 0.5 * (lo + hi);
        if (g_theta(m, theta, mid) > 0) lo = mid;
        else hi = mid;
    }
    GThetaRoot g;
    g.m = m;
    g.theta = theta;
    g.r_theta = 0.5 * (lo + hi);
    g.c_of_theta = std::pow(g.r_theta, m - 1) * std::sin(m * theta) / std::sin(theta);
    return g;
}

int min_poly_degree(const Matrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("min_poly_degree needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 0;
    std::vector<Vector> flat;
    Matrix p = Matrix::identity(n, a.mode());
    for (std::size_t d = 0; d <= n; ++d) {
        Vector v;
        v.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v.push_back(p(i, j));
        flat.push_back(v);
        bool dependent;
        if (a.mode() == ScalarMode::Exact) {
            dependent = rank(flat, tol) < static_cast<int>(flat.size());
        } else {
            Eigen::MatrixXd k(flat.size(), n * n);
            for (std::size_t r = 0; r < flat.size(); ++r) {
                double norm = 0;
                for (const auto& x : flat[r]) norm += x.d() * x.d();
                norm = std::sqrt(norm);
                for (std::size_t c = 0; c < n * n; ++c) k(r, c) = norm > 0 ? flat[r][c].d() / norm : 0.0;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
            auto sv = svd.singularValues();
            dependent = sv(sv.size() - 1) <= tol.eps_rank * sv(0) || sv.size() < static_cast<Eigen::Index>(flat.size());
        }
        if (dependent) return static_cast<int>(d);
        p = p * a;
    }
    return static_cast<int>(n);
}

std::vector<Scalar> char_poly(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_poly needs a square matrix");
    const std::size_t n = a.rows();
    const ScalarMode mode = a.mode();
    std::vector<Scalar> c(n + 1, Scalar::zero(mode));
    c[0] = Scalar::one(mode);
    Matrix mk(n, n, mode);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k - 1];
        Matrix am = a * mk;
        Scalar tr = Scalar::zero(mode);
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[k] = -tr / Scalar::from_int(static_cast<long>(k), mode);
    }
    return c;
}

}  // namespace conelab
