#pragma once

#include "conelab/numerics.hpp"
#include "conelab/poly.hpp"

#include <vector>

namespace conelab {

using ComplexTuple = std::vector<Complex>;

// h_k: sum of all degree-k monomials (1 for k = 0, 0 for k < 0).
Complex complete_h(int k, const ComplexTuple& t);
// h_0..h_kmax in one pass.
std::vector<Complex> complete_h_upto(int kmax, const ComplexTuple& t);
Complex elementary_sigma(int k, const ComplexTuple& t);

// prod_{i<j} (t_j - t_i)
Complex vandermonde(const ComplexTuple& t);
// det with columns 1, t, ..., t^(n-2), t^p.  Requires p >= n - 1.
Complex vandermonde_fp(int p, const ComplexTuple& t);
// |f_p - h_{p+1-n} V| / max(1, |h_{p+1-n} V|)
double claim1_residual(int p, const ComplexTuple& t);

// A set of m-th roots of unity, omega^k for k in indices.
struct RootSubset {
    int m = 0;
    std::vector<int> indices;
};

ComplexTuple roots_of(const RootSubset& s);
ComplexTuple complement_roots(const RootSubset& s);
// max_j |h_j(S) - (-1)^j sigma_j(S^c)| over j = 1..m-|S|.
double claim2_residual(const RootSubset& s);

// The set used for positivity: omega^{+-1..+-(n-1)/2}, 1 (n odd), or with -1 as well (m, n even).
// Ordered omega, conj(omega), omega^2, ..., [-1,] 1.
RootSubset claim3_set(int m, int n);
// h_r(S) for r = 1..m-n.
std::vector<Complex> claim3_values(int m, int n);
// Coefficients of prod_{x in S^c} (t - x), descending, leading 1.
std::vector<Complex> complement_poly(const RootSubset& s);

// e_p for p = n..m: the generalized Vandermonde determinant on the ordered claim-3 set with
// last exponent p - 1.
std::vector<Complex> e_values(int m, int n);
// det Q_p for p = n..m, where Q_p is [y_1 .. y_{n-1} y_p].
std::vector<double> det_q(const std::vector<Vector>& ys);
// Every entry nonzero (beyond eps relative to the largest) with one common sign.
bool same_sign(const std::vector<double>& v, double eps = 1e-9);

}  // namespace conelab
