#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace twostage {

/// Real vector with finite entries.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0);
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values);

  static DenseVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const DenseVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Small dense real matrix stored row-major.
///
/// Constructors that take caller-supplied entries reject NaN/Inf; results of
/// arithmetic on finite inputs are not re-checked.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols, 0.0}; }
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DenseMatrix from_columns(const std::vector<DenseVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  DenseVector column(std::size_t j) const;
  void set_column(std::size_t j, const DenseVector& v);

  DenseMatrix transpose() const;
  DenseMatrix diagonal_part() const;
  /// Entries strictly below the diagonal, everything else zero.
  DenseMatrix strictly_lower() const;
  /// Entries strictly above the diagonal, everything else zero.
  DenseMatrix strictly_upper() const;

  bool is_finite() const noexcept;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a);
DenseMatrix operator*(double s, const DenseMatrix& a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseVector operator*(const DenseMatrix& a, const DenseVector& x);

DenseVector operator+(const DenseVector& a, const DenseVector& b);
DenseVector operator-(const DenseVector& a, const DenseVector& b);
DenseVector operator-(const DenseVector& a);
DenseVector operator*(double s, const DenseVector& a);

/// y <- A x, writing into a caller-owned buffer.
void multiply(const DenseMatrix& a, std::span<const double> x, std::span<double> y);

/// Maximum absolute row sum.
double norm_inf(const DenseMatrix& a);
double norm_inf(const DenseVector& x);
double norm_inf(std::span<const double> x);
double max_abs(const DenseMatrix& a);
/// max |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const DenseVector& a, const DenseVector& b);

/// Sum of sum_{j<terms} M^j, i.e. I + M + ... + M^{terms-1}.
DenseMatrix power_sum(const DenseMatrix& m, std::size_t terms);
DenseMatrix matrix_power(const DenseMatrix& m, std::size_t exponent);

}  // namespace twostage
