#include "qobs/matrix.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qobs {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "matrix literal rows have unequal lengths");
    for (double v : row) data_.push_back(v);
  }
  require(is_finite(), "matrix literal contains non-finite entries");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t i, std::size_t j, std::size_t r, std::size_t c) const {
  require(i + r <= rows_ && j + c <= cols_, "block exceeds matrix bounds");
  Matrix b(r, c);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < c; ++l) b(k, l) = (*this)(i + k, j + l);
  return b;
}

void Matrix::set_block(std::size_t i, std::size_t j, const Matrix& m) {
  require(i + m.rows() <= rows_ && j + m.cols() <= cols_, "block exceeds matrix bounds");
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t l = 0; l < m.cols(); ++l) (*this)(i + k, j + l) = m(k, l);
}

double Matrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) sum += std::abs((*this)(i, j));
    best = std::max(best, sum);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

bool Matrix::is_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix addition dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix subtraction dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require(lhs.cols_ == rhs.rows_, "matrix product dimension mismatch");
  Matrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff dimension mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

namespace {

struct LuFactors {
  Matrix lu;                    // combined L (unit diagonal) and U
  std::vector<std::size_t> piv; // row permutation
  bool singular = false;
};

LuFactors lu_factor(const Matrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), false};
  std::iota(f.piv.begin(), f.piv.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.piv[k], f.piv[p]);
    }
    const double pivot = f.lu(k, k);
    if (pivot == 0.0) {
      f.singular = true;
      return f;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      f.lu(i, k) /= pivot;
      const double m = f.lu(i, k);
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

Matrix lu_solve(const LuFactors& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  Matrix x(n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    // forward substitution on the permuted right-hand side
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(f.piv[i], j);
      for (std::size_t k = 0; k < i; ++k) s -= f.lu(i, k) * y[k];
      y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= f.lu(ii, k) * x(k, j);
      x(ii, j) = s / f.lu(ii, ii);
    }
  }
  return x;
}

}  // namespace

Matrix solve(const Matrix& a, const Matrix& b) {
  require(a.square(), "solve requires a square coefficient matrix");
  require(a.rows() == b.rows(), "solve right-hand side dimension mismatch");
  require(a.is_finite() && b.is_finite(), "solve requires finite inputs");
  const LuFactors f = lu_factor(a);
  if (f.singular) throw std::runtime_error("solve: coefficient matrix is singular");
  Matrix x = lu_solve(f, b);
  if (!x.is_finite()) throw std::runtime_error("solve produced non-finite values");
  return x;
}

Matrix inverse(const Matrix& m) {
  require(m.square(), "inverse requires a square matrix");
  require(m.is_finite(), "inverse requires finite input");
  const LuFactors f = lu_factor(m);
  if (f.singular)
    throw std::runtime_error("inverse: matrix is singular (condition estimate inf)");
  Matrix inv = lu_solve(f, Matrix::identity(m.rows()));
  const double cond = m.one_norm() * inv.one_norm();
  if (!inv.is_finite() || !std::isfinite(cond) || cond > kMaxConditionEstimate) {
    std::ostringstream msg;
    msg << "inverse: matrix is ill-conditioned (condition estimate " << cond << ")";
    throw std::runtime_error(msg.str());
  }
  return inv;
}

namespace {

// LAPACK-style iterative radix-2 balancing: returns d with the input replaced
// by D^{-1} M D, D = diag(d). Exact in floating point (powers of two only).
std::vector<double> balance_in_place(Matrix& a) {
  const double radix = 2.0;
  const std::size_t n = a.rows();
  std::vector<double> d(n, 1.0);
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / radix) { c *= radix; r /= radix; f *= radix; }
      while (c >= r * radix) { c /= radix; r *= radix; f /= radix; }
      if (f != 1.0 && (c + r) < 0.95 * s) {
        done = false;
        d[i] *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return d;
}

// Pade-13 scaling-and-squaring on an already balanced matrix.
Matrix expm_pade13(const Matrix& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const std::size_t n = a.rows();

  int s = 0;
  const double nrm = a.one_norm();
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  const Matrix as = a * std::ldexp(1.0, -s);

  const Matrix eye = Matrix::identity(n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;

  const Matrix u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
            b[3] * a2 + b[1] * eye);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * eye;

  Matrix x = solve(v - u, v + u);
  for (int k = 0; k < s; ++k) x = x * x;
  return x;
}

}  // namespace

Matrix expm(const Matrix& m, double t) {
  require(m.square(), "expm requires a square matrix");
  require(m.is_finite(), "expm requires finite input");
  require(std::isfinite(t), "expm requires finite t");
  const std::size_t n = m.rows();
  if (n == 0) return Matrix();

  Matrix a = m * t;
  const std::vector<double> d = balance_in_place(a);
  Matrix x = expm_pade13(a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) *= d[i] / d[j];
  if (!x.is_finite()) throw std::runtime_error("expm produced non-finite values");
  return x;
}

namespace {

constexpr int kGaussOrder = 20;

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
// polynomial; computed once.
const std::array<std::pair<double, double>, kGaussOrder>& gauss_table() {
  static const auto table = [] {
    std::array<std::pair<double, double>, kGaussOrder> t{};
    const int n = kGaussOrder;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double z1 = 0.0, pp = 0.0;
      do {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        z1 = z;
        z = z1 - p1 / pp;
      } while (std::abs(z - z1) > 1e-15);
      const double w = 2.0 / ((1.0 - z * z) * pp * pp);
      t[i] = {-z, w};
      t[n - 1 - i] = {z, w};
    }
    return t;
  }();
  return table;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (const auto& [x, w] : gauss_table()) {
    const double v = f(mid + half * x);
    if (!std::isfinite(v))
      throw std::runtime_error("integrate: integrand returned a non-finite value");
    sum += w * v;
  }
  return sum * half;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid);
  const double right = gauss_panel(f, mid, b);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth >= 48)
    throw std::runtime_error("integrate: failed to reach requested tolerance");
  return integrate_adaptive(f, a, mid, left, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), "integrate requires finite bounds");
  require(a <= b, "integrate requires a <= b");
  if (a == b) return 0.0;
  return integrate_adaptive(f, a, b, gauss_panel(f, a, b), kQuadratureTol, 0);
}

}  // namespace qobs
