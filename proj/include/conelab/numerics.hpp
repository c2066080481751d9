#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace conelab {

enum class ScalarMode { Exact, Float };

struct Tolerance {
    double eps_incidence = 1e-9;
    double eps_rank = 1e-9;
    double eps_root = 1e-12;

    // Throws std::invalid_argument unless every field is strictly positive.
    void validate() const;
};

// Exact rational or binary64 value.  Arithmetic between the two modes is an error.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    Scalar(const mpq_class& q) : v_(q) { std::get<mpq_class>(v_).canonicalize(); }
    static Scalar exact(long num, long den = 1);
    static Scalar real(double d) { Scalar s; s.v_ = d; return s; }
    static Scalar zero(ScalarMode mode) { return mode == ScalarMode::Exact ? Scalar() : real(0.0); }
    static Scalar one(ScalarMode mode) { return mode == ScalarMode::Exact ? exact(1) : real(1.0); }
    static Scalar from_int(long v, ScalarMode mode) { return mode == ScalarMode::Exact ? exact(v) : real(double(v)); }
    // Exact mode takes the binary value of d exactly.
    static Scalar from_double(double d, ScalarMode mode);
    // Parses "p", "p/q" or a decimal literal (decimals become exact fractions in Exact mode).
    static Scalar parse(const std::string& text, ScalarMode mode);

    ScalarMode mode() const { return v_.index() == 0 ? ScalarMode::Exact : ScalarMode::Float; }
    bool is_exact() const { return v_.index() == 0; }
    const mpq_class& q() const;
    double d() const;
    double to_double() const;
    std::string to_string() const;

    // Exact zero test; Float values must be compared through a tolerance instead.
    bool exact_zero() const;
    int exact_sign() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    // Structural equality (same mode and same stored value).
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

private:
    void check_mode(const Scalar& o) const;
    std::variant<mpq_class, double> v_;
};

Scalar abs(const Scalar& s);

// |v| <= eps_incidence * (1 + scale) in Float mode, exact zero otherwise.
bool is_zero(const Scalar& v, double scale, const Tolerance& tol);
// -1, 0 or +1 with the same zero rule.
int sign(const Scalar& v, double scale, const Tolerance& tol);

using Vector = std::vector<Scalar>;

Vector zeros(std::size_t n, ScalarMode mode);
Scalar dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
double inf_norm(const Vector& v);
std::vector<double> to_doubles(const Vector& v);
Vector vector_from_doubles(const std::vector<double>& v, ScalarMode mode);
// Mode of the first entry; Exact for an empty vector.
ScalarMode mode_of(const Vector& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, ScalarMode mode);
    static Matrix identity(std::size_t n, ScalarMode mode);
    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix from_columns(const std::vector<Vector>& cols);
    static Matrix from_doubles(const std::vector<std::vector<double>>& rows, ScalarMode mode);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    ScalarMode mode() const { return mode_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    Matrix transpose() const;
    Vector apply(const Vector& v) const;
    double inf_norm() const;
    std::vector<std::vector<double>> to_doubles() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    ScalarMode mode_ = ScalarMode::Exact;
    std::vector<Scalar> data_;
};

Matrix power(const Matrix& a, int k);

// Row rank.  Exact: fraction-free (Bareiss) elimination on the integer-scaled rows.
// Float: full-pivot LU counting pivots above eps_rank times the largest pivot.
int rank(const Matrix& m, const Tolerance& tol = {});
int rank(const std::vector<Vector>& rows, const Tolerance& tol = {});

// Basis of the right null space, each vector scaled to unit max-norm.
std::vector<Vector> null_space(const Matrix& m, const Tolerance& tol = {});

// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<Vector> solve(const Matrix& m, const Vector& b, const Tolerance& tol = {});

// Nonnegative coefficients lambda with point = sum lambda_i generators_i, found by a
// phase-one simplex with Bland's rule; nullopt when infeasible.
std::optional<Vector> cone_combination(const Vector& point, const std::vector<Vector>& generators,
                                       const Tolerance& tol = {});
bool in_cone(const Vector& point, const std::vector<Vector>& generators, const Tolerance& tol = {});

}  // namespace conelab
