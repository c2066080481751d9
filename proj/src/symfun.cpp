#include "conelab/symfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conelab {

namespace {

// sigma_0..sigma_n from prod (1 + x t).
std::vector<Complex> sigmas(const ComplexTuple& t) {
    std::vector<Complex> e(t.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += t[i] * e[k - 1];
    return e;
}

Complex unit_root(int m, int k) { return std::polar(1.0, 2 * std::numbers::pi * k / m); }

void check_subset(const RootSubset& s) {
    if (s.m < 1) throw std::invalid_argument("root subset needs m >= 1");
    std::vector<bool> seen(static_cast<std::size_t>(s.m), false);
    for (int k : s.indices) {
        if (k < 0 || k >= s.m || seen[k]) throw std::invalid_argument("root subset indices must be distinct in 0..m-1");
        seen[k] = true;
    }
    if (s.indices.empty() || static_cast<int>(s.indices.size()) == s.m)
        throw std::invalid_argument("root subset must be nonempty and proper");
}

}  // namespace

std::vector<Complex> complete_h_upto(int kmax, const ComplexTuple& t) {
    const auto e = sigmas(t);
    const int n = static_cast<int>(t.size());
    std::vector<Complex> h(static_cast<std::size_t>(std::max(kmax, 0) + 1), 0.0);
    h[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        Complex s = 0.0;
        for (int r = 1; r <= std::min(k, n); ++r) s += (r % 2 ? 1.0 : -1.0) * e[r] * h[k - r];
        h[k] = s;
    }
    return h;
}

Complex complete_h(int k, const ComplexTuple& t) {
    if (k < 0) return 0.0;
    return complete_h_upto(k, t)[static_cast<std::size_t>(k)];
}

Complex elementary_sigma(int k, const ComplexTuple& t) {
    if (k < 0 || k > static_cast<int>(t.size())) return 0.0;
    return sigmas(t)[static_cast<std::size_t>(k)];
}

Complex vandermonde(const ComplexTuple& t) {
    Complex v = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) v *= t[j] - t[i];
    return v;
}

Complex vandermonde_fp(int p, const ComplexTuple& t) {
    const int n = static_cast<int>(t.size());
    if (n < 1 || p < n - 1) throw std::invalid_argument("vandermonde_fp needs p >= n - 1");
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) a(i, j) = std::pow(t[i], j);
        a(i, n - 1) = std::pow(t[i], p);
    }
    return a.partialPivLu().determinant();
}

double claim1_residual(int p, const ComplexTuple& t) {
    const int n = static_cast<int>(t.size());
    Complex rhs = complete_h(p + 1 - n, t) * vandermonde(t);
    return std::abs(vandermonde_fp(p, t) - rhs) / std::max(1.0, std::abs(rhs));
}

ComplexTuple roots_of(const RootSubset& s) {
    check_subset(s);
    ComplexTuple t;
    for (int k : s.indices) t.push_back(unit_root(s.m, k));
    return t;
}

ComplexTuple complement_roots(const RootSubset& s) {
    check_subset(s);
    ComplexTuple t;
    for (int k = 0; k < s.m; ++k)
        if (std::find(s.indices.begin(), s.indices.end(), k) == s.indices.end()) t.push_back(unit_root(s.m, k));
    return t;
}

double claim2_residual(const RootSubset& s) {
    const ComplexTuple in = roots_of(s), out = complement_roots(s);
    const int top = s.m - static_cast<int>(in.size());
    const auto h = complete_h_upto(top, in);
    const auto e = sigmas(out);
    double worst = 0;
    for (int j = 1; j <= top; ++j)
        worst = std::max(worst, std::abs(h[j] - (j % 2 ? -1.0 : 1.0) * e[j]));
    return worst;
}

RootSubset claim3_set(int m, int n) {
    if (n < 3 || n > m) throw std::invalid_argument("claim 3 needs 3 <= n <= m");
    if (n % 2 == 0 && m % 2 == 1) throw std::invalid_argument("claim 3 needs n odd or m, n both even");
    RootSubset s{m, {}};
    for (int k = 1; k <= (n - 1) / 2; ++k) {
        s.indices.push_back(k);
        s.indices.push_back(m - k);
    }
    if (n % 2 == 0) s.indices.push_back(m / 2);
    s.indices.push_back(0);
    return s;
}

std::vector<Complex> claim3_values(int m, int n) {
    const auto h = complete_h_upto(m - n, roots_of(claim3_set(m, n)));
    return std::vector<Complex>(h.begin() + 1, h.end());
}

std::vector<Complex> complement_poly(const RootSubset& s) {
    const ComplexTuple out = complement_roots(s);
    std::vector<Complex> c = {1.0};
    for (Complex x : out) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= x * c[i];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<Complex> e_values(int m, int n) {
    const ComplexTuple t = roots_of(claim3_set(m, n));
    std::vector<Complex> e;
    for (int p = n; p <= m; ++p) e.push_back(vandermonde_fp(p - 1, t));
    return e;
}

std::vector<double> det_q(const std::vector<Vector>& ys) {
    if (ys.empty()) return {};
    const int n = static_cast<int>(ys[0].size());
    const int m = static_cast<int>(ys.size());
    if (m < n) throw std::invalid_argument("det_q needs at least n vectors");
    Eigen::MatrixXd q(n, n);
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i < n; ++i) q(i, j) = ys[j][i].to_double();
    std::vector<double> out;
    for (int p = n; p <= m; ++p) {
        for (int i = 0; i < n; ++i) q(i, n - 1) = ys[p - 1][i].to_double();
        out.push_back(q.partialPivLu().determinant());
    }
    return out;
}

bool same_sign(const std::vector<double>& v, double eps) {
    double big = 0;
    for (double x : v) big = std::max(big, std::fabs(x));
    if (big == 0) return false;
    for (double x : v)
        if (std::fabs(x) <= eps * big || (x > 0) != (v.front() > 0)) return false;
    return true;
}

}  // namespace conelab
