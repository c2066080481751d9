#include "conelab/numerics.hpp"

#include "conelab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace conelab {

void Tolerance::validate() const {
    if (!(eps_incidence > 0) || !(eps_rank > 0) || !(eps_root > 0))
        throw std::invalid_argument("tolerances must be strictly positive");
}

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::from_double(double d, ScalarMode mode) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite scalar");
    if (mode == ScalarMode::Float) return real(d);
    return Scalar(mpq_class(d));
}

namespace {

mpq_class parse_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long exp10 = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad number: " + s);
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("bad number: " + s);
        std::size_t used = 0;
        long e = std::stol(s.substr(i + 1), &used);
        if (i + 1 + used != s.size()) throw std::invalid_argument("bad number: " + s);
        exp10 += e;
    }
    mpz_class num(digits, 10);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    mpq_class q = exp10 >= 0 ? mpq_class(num * p10) : mpq_class(num, p10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

}  // namespace

Scalar Scalar::parse(const std::string& text, ScalarMode mode) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw std::invalid_argument("empty number");
    mpq_class q;
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        mpq_class a = parse_decimal(t.substr(0, slash));
        mpq_class b = parse_decimal(t.substr(slash + 1));
        if (b == 0) throw std::invalid_argument("zero denominator: " + text);
        q = a / b;
    } else {
        q = parse_decimal(t);
    }
    if (mode == ScalarMode::Exact) return Scalar(q);
    return real(slash != std::string::npos ? q.get_d() : std::stod(t));
}

const mpq_class& Scalar::q() const {
    if (!is_exact()) throw std::logic_error("Scalar is not exact");
    return std::get<mpq_class>(v_);
}

double Scalar::d() const {
    if (is_exact()) throw std::logic_error("Scalar is not a float");
    return std::get<double>(v_);
}

double Scalar::to_double() const { return is_exact() ? std::get<mpq_class>(v_).get_d() : std::get<double>(v_); }

std::string Scalar::to_string() const {
    if (is_exact()) return std::get<mpq_class>(v_).get_str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v_));
    return buf;
}

bool Scalar::exact_zero() const { return sgn(q()) == 0; }
int Scalar::exact_sign() const { return sgn(q()); }

void Scalar::check_mode(const Scalar& o) const {
    if (v_.index() != o.v_.index()) throw std::logic_error("mixed scalar modes");
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
    return real(-std::get<double>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_mode(o);
    if (is_exact()) std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
    else std::get<double>(v_) += std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_mode(o);
    if (is_exact()) std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) -= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_mode(o);
    if (is_exact()) std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) *= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_mode(o);
    if (is_exact()) {
        if (sgn(std::get<mpq_class>(o.v_)) == 0) throw std::domain_error("division by zero");
        std::get<mpq_class>(v_) /= std::get<mpq_class>(o.v_);
    } else {
        std::get<double>(v_) /= std::get<double>(o.v_);
    }
    return *this;
}

Scalar abs(const Scalar& s) {
    if (s.is_exact()) return Scalar(mpq_class(::abs(s.q())));
    return Scalar::real(std::fabs(s.d()));
}

bool is_zero(const Scalar& v, double scale, const Tolerance& tol) {
    if (v.is_exact()) return v.exact_zero();
    return std::fabs(v.d()) <= tol.eps_incidence * (1.0 + scale);
}

int sign(const Scalar& v, double scale, const Tolerance& tol) {
    if (is_zero(v, scale, tol)) return 0;
    return v.to_double() > 0 ? 1 : -1;
}

Vector zeros(std::size_t n, ScalarMode mode) { return Vector(n, Scalar::zero(mode)); }

Scalar dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    if (a.empty()) return Scalar();
    Scalar s = Scalar::zero(a[0].mode());
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vector r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vector r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

Vector scale(const Scalar& s, const Vector& v) {
    Vector r(v);
    for (auto& x : r) x *= s;
    return r;
}

double inf_norm(const Vector& v) {
    double m = 0;
    for (const auto& x : v) m = std::max(m, std::fabs(x.to_double()));
    return m;
}

std::vector<double> to_doubles(const Vector& v) {
    std::vector<double> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x.to_double());
    return r;
}

Vector vector_from_doubles(const std::vector<double>& v, ScalarMode mode) {
    Vector r;
    r.reserve(v.size());
    for (double x : v) r.push_back(Scalar::from_double(x, mode));
    return r;
}

ScalarMode mode_of(const Vector& v) { return v.empty() ? ScalarMode::Exact : v[0].mode(); }

Matrix::Matrix(std::size_t rows, std::size_t cols, ScalarMode mode)
    : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, Scalar::zero(mode)) {}

Matrix Matrix::identity(std::size_t n, ScalarMode mode) {
    Matrix m(n, n, mode);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(mode);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size(), mode_of(rows[0]));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) { return from_rows(cols).transpose(); }

Matrix Matrix::from_doubles(const std::vector<std::vector<double>>& rows, ScalarMode mode) {
    std::vector<Vector> r;
    for (const auto& row : rows) r.push_back(vector_from_doubles(row, mode));
    return from_rows(r);
}

Vector Matrix::row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vector Matrix::col(std::size_t j) const {
    Vector c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, mode_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    Vector r = zeros(rows_, mode_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

double Matrix::inf_norm() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, std::fabs(x.to_double()));
    return m;
}

std::vector<std::vector<double>> Matrix::to_doubles() const {
    std::vector<std::vector<double>> r(rows_, std::vector<double>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j).to_double();
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    Matrix c(a.rows_, b.cols_, a.mode_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    Matrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

Matrix power(const Matrix& a, int k) {
    if (a.rows() != a.cols()) throw std::invalid_argument("power of a non-square matrix");
    Matrix r = Matrix::identity(a.rows(), a.mode());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_double();
    return e;
}

int bareiss_rank(const Matrix& m) {
    std::size_t r = m.rows(), c = m.cols();
    std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < c; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).q().get_den_mpz_t());
        for (std::size_t j = 0; j < c; ++j) {
            mpq_class v = m(i, j).q() * l;
            a[i][j] = v.get_num();
        }
    }
    mpz_class prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && a[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t i = row + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < c; ++j) {
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        ++row;
    }
    return static_cast<int>(row);
}

// Reduced row echelon form over the rationals with pivots taken from the first cols columns;
// returns the pivot columns.
std::vector<std::size_t> rref_exact(std::vector<std::vector<mpq_class>>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && sgn(a[piv][col]) == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        mpq_class inv = 1 / a[row][col];
        for (std::size_t j = col; j < a[row].size(); ++j) a[row][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || sgn(a[i][col]) == 0) continue;
            mpq_class f = a[i][col];
            for (std::size_t j = col; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Vector unit_max_norm(Vector v) {
    if (v.empty()) return v;
    if (v[0].is_exact()) {
        mpq_class m = 0;
        for (const auto& x : v) m = std::max(m, mpq_class(::abs(x.q())));
        if (m != 0)
            for (auto& x : v) x = Scalar(mpq_class(x.q() / m));
        return v;
    }
    double m = inf_norm(v);
    if (m > 0)
        for (auto& x : v) x = Scalar::real(x.d() / m);
    return v;
}

}  // namespace

int rank(const Matrix& m, const Tolerance& tol) {
    if (m.empty()) return 0;
    if (m.mode() == ScalarMode::Exact) return bareiss_rank(m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(tol.eps_rank);
    return static_cast<int>(lu.rank());
}

int rank(const std::vector<Vector>& rows, const Tolerance& tol) {
    if (rows.empty()) return 0;
    return rank(Matrix::from_rows(rows), tol);
}

std::vector<Vector> null_space(const Matrix& m, const Tolerance& tol) {
    std::vector<Vector> basis;
    std::size_t c = m.cols();
    if (m.mode() == ScalarMode::Exact) {
        std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(c));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < c; ++j) a[i][j] = m(i, j).q();
        auto pivots = rref_exact(a, c);
        std::vector<bool> is_pivot(c, false);
        for (auto p : pivots) is_pivot[p] = true;
        for (std::size_t f = 0; f < c; ++f) {
            if (is_pivot[f]) continue;
            Vector v = zeros(c, ScalarMode::Exact);
            v[f] = Scalar::exact(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = Scalar(mpq_class(-a[r][f]));
            basis.push_back(unit_max_norm(v));
        }
        return basis;
    }
    if (m.rows() == 0) {
        for (std::size_t f = 0; f < c; ++f) {
            Vector v = zeros(c, ScalarMode::Float);
            v[f] = Scalar::real(1.0);
            basis.push_back(v);
        }
        return basis;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(tol.eps_rank);
    if (lu.dimensionOfKernel() == 0) return basis;
    Eigen::MatrixXd k = lu.kernel();
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
        Vector v(c);
        for (std::size_t i = 0; i < c; ++i) v[i] = Scalar::real(k(static_cast<Eigen::Index>(i), j));
        basis.push_back(unit_max_norm(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b, const Tolerance& tol) {
    if (m.rows() != m.cols() || b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    std::size_t n = m.rows();
    if (m.mode() == ScalarMode::Exact) {
        std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).q();
            a[i][n] = b[i].q();
        }
        auto pivots = rref_exact(a, n);
        if (pivots.size() < n) return std::nullopt;
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = Scalar(a[i][n]);
        return x;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(tol.eps_rank);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = b[i].d();
    Eigen::VectorXd x = lu.solve(rhs);
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = Scalar::real(x(static_cast<Eigen::Index>(i)));
    return r;
}

std::optional<Vector> cone_combination(const Vector& point, const std::vector<Vector>& generators,
                                       const Tolerance& tol) {
    const std::size_t n = point.size();
    const std::size_t k = generators.size();
    for (const auto& g : generators)
        if (g.size() != n) throw std::invalid_argument("in_cone: dimension mismatch");
    const ScalarMode mode = mode_of(point);
    if (n == 0) return zeros(k, mode);

    double scale = inf_norm(point);
    for (const auto& g : generators) scale = std::max(scale, inf_norm(g));
    auto positive = [&](const Scalar& v) { return sign(v, scale, tol) > 0; };

    // Tableau [G | I | b] with artificial columns k..k+n-1, rows flipped so b >= 0.
    const std::size_t cols = k + n;
    std::vector<Vector> t(n, zeros(cols + 1, mode));
    for (std::size_t i = 0; i < n; ++i) {
        bool flip = point[i].is_exact() ? point[i].exact_sign() < 0 : point[i].d() < 0;
        for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? -generators[j][i] : generators[j][i];
        t[i][k + i] = Scalar::one(mode);
        t[i][cols] = flip ? -point[i] : point[i];
    }
    std::vector<std::size_t> basis(n);
    for (std::size_t i = 0; i < n; ++i) basis[i] = k + i;

    const int cap = 10000;
    for (int it = 0; it < cap; ++it) {
        // Reduced-cost numerator over rows whose basic variable is still artificial.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < k && enter == cols; ++j) {
            bool basic = std::find(basis.begin(), basis.end(), j) != basis.end();
            if (basic) continue;
            Scalar d = Scalar::zero(mode);
            for (std::size_t i = 0; i < n; ++i)
                if (basis[i] >= k) d += t[i][j];
            if (positive(d)) enter = j;
        }
        if (enter == cols) break;
        std::size_t leave = n;
        Scalar best;
        for (std::size_t i = 0; i < n; ++i) {
            if (!positive(t[i][enter])) continue;
            Scalar ratio = t[i][cols] / t[i][enter];
            bool better = leave == n;
            if (!better) {
                Scalar diff = ratio - best;
                int s = mode == ScalarMode::Exact ? diff.exact_sign() : sign(diff, scale, tol);
                better = s < 0 || (s == 0 && basis[i] < basis[leave]);
            }
            if (better) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == n) break;  // unbounded direction; cannot happen with a bounded phase-one objective
        Scalar piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == leave) continue;
            Scalar f = t[i][enter];
            if (mode == ScalarMode::Exact ? f.exact_zero() : f.d() == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
        if (it + 1 == cap) throw NonConvergence("simplex iteration cap reached");
    }

    Scalar infeasibility = Scalar::zero(mode);
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i] >= k) infeasibility += abs(t[i][cols]);
    if (mode == ScalarMode::Exact ? !infeasibility.exact_zero()
                                  : infeasibility.d() > tol.eps_incidence * (1.0 + scale))
        return std::nullopt;
    Vector lambda = zeros(k, mode);
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i] < k) lambda[basis[i]] = t[i][cols];
    return lambda;
}

bool in_cone(const Vector& point, const std::vector<Vector>& generators, const Tolerance& tol) {
    return cone_combination(point, generators, tol).has_value();
}

}  // namespace conelab
