#include "twostage/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twostage/errors.hpp"

namespace twostage {
namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteValue(std::string(what) + ": non-finite entry");
  }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

void require_same_size(const DenseVector& a, const DenseVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(op) + ": length " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t n, double fill) : values_(n, fill) {
  require_finite(values_, "DenseVector");
}

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  require_finite(values_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> values) : values_(values) {
  require_finite(values_, "DenseVector");
}

DenseVector DenseVector::unit(std::size_t n, std::size_t i) {
  DenseVector e(n);
  e[i] = 1.0;
  return e;
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite({&fill, 1}, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("DenseMatrix: " + std::to_string(data_.size()) +
                            " entries for shape " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  require_finite(diag, "DenseMatrix::diagonal");
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("DenseMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

DenseMatrix DenseMatrix::from_columns(const std::vector<DenseVector>& columns) {
  const std::size_t c = columns.size();
  const std::size_t r = c == 0 ? 0 : columns.front().size();
  DenseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) m.set_column(j, columns[j]);
  return m;
}

DenseVector DenseMatrix::column(std::size_t j) const {
  if (j >= cols_) throw DimensionMismatch("DenseMatrix::column: index out of range");
  DenseVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void DenseMatrix::set_column(std::size_t j, const DenseVector& v) {
  if (j >= cols_ || v.size() != rows_) {
    throw DimensionMismatch("DenseMatrix::set_column: shape mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::diagonal_part() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d(i, i) = (*this)(i, i);
  return d;
}

DenseMatrix DenseMatrix::strictly_lower() const {
  DenseMatrix l(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < std::min(i, cols_); ++j) l(i, j) = (*this)(i, j);
  return l;
}

DenseMatrix DenseMatrix::strictly_upper() const {
  DenseMatrix u(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) u(i, j) = (*this)(i, j);
  return u;
}

bool DenseMatrix::is_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator+");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] += bd[k];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator-");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] -= bd[k];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a) { return -1.0 * a; }

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("operator*: inner dimensions " + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

DenseVector operator*(const DenseMatrix& a, const DenseVector& x) {
  DenseVector y(a.rows());
  multiply(a, x.span(), y.span());
  return y;
}

void multiply(const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (a.cols() != x.size() || a.rows() != y.size()) {
    throw DimensionMismatch("multiply: shape mismatch");
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
}

DenseVector operator+(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "operator+");
  DenseVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

DenseVector operator-(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "operator-");
  DenseVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

DenseVector operator-(const DenseVector& a) { return -1.0 * a; }

DenseVector operator*(double s, const DenseVector& a) {
  DenseVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= s;
  return c;
}

double norm_inf(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double norm_inf(const DenseVector& x) { return norm_inf(x.span()); }

double norm_inf(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

double max_abs(const DenseMatrix& a) { return norm_inf(a.data()); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) best = std::max(best, std::abs(ad[k] - bd[k]));
  return best;
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

DenseMatrix matrix_power(const DenseMatrix& m, std::size_t exponent) {
  if (!m.is_square()) throw DimensionMismatch("matrix_power: matrix not square");
  DenseMatrix result = DenseMatrix::identity(m.rows());
  DenseMatrix base = m;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

DenseMatrix power_sum(const DenseMatrix& m, std::size_t terms) {
  if (!m.is_square()) throw DimensionMismatch("power_sum: matrix not square");
  DenseMatrix sum(m.rows(), m.cols());
  DenseMatrix term = DenseMatrix::identity(m.rows());
  for (std::size_t j = 0; j < terms; ++j) {
    sum = sum + term;
    if (j + 1 < terms) term = term * m;
  }
  return sum;
}

}  // namespace twostage
