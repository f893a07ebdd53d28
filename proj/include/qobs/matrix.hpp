#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

namespace qobs {

// Frozen tolerances of the numeric kernel. Downstream invariant checks rely on
// these being constants of the build, not runtime configuration.
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kMaxConditionEstimate = 1e12;

/// Dense real matrix, row-major. Everything in this project is 6x6 or
/// smaller, so the implementation favours clarity and strict checking over
/// blocking or vectorisation. Dimension mismatches and non-finite entries are
/// reported as exceptions, never silently broadcast.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const;
  Matrix block(std::size_t i, std::size_t j, std::size_t r, std::size_t c) const;
  void set_block(std::size_t i, std::size_t j, const Matrix& m);

  double one_norm() const;  // max absolute column sum
  double max_abs() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
  friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
  friend Matrix operator-(const Matrix& m) { return m * -1.0; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest absolute entrywise difference; dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Solve a x = b by LU with partial pivoting. a must be square and
/// nonsingular; b may have any number of columns.
Matrix solve(const Matrix& a, const Matrix& b);

/// Inverse with a 1-norm condition estimate. Throws std::runtime_error,
/// reporting the estimate, when the estimate exceeds kMaxConditionEstimate or
/// the matrix is singular.
Matrix inverse(const Matrix& m);

/// e^{m t} by radix-2 balancing plus Pade-13 scaling-and-squaring. The
/// balancing step matters: the oscillator matrices handled here have entry
/// scales apart by factors of ~1e5, and the flow checks downstream need the
/// propagator accurate in the small-scale rows as well.
Matrix expm(const Matrix& m, double t = 1.0);

/// Adaptive composite 20-point Gauss-Legendre quadrature over [a, b] with
/// absolute tolerance kQuadratureTol. Requires a <= b; non-finite integrand
/// values are an error.
double integrate(const std::function<double(double)>& f, double a, double b);

}  // namespace qobs
