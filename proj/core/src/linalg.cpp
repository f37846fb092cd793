#include "twostage/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "twostage/errors.hpp"

namespace twostage {

LuFactorization::LuFactorization(const DenseMatrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw DimensionMismatch("lu: matrix not square");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double scale = norm_inf(a);
  const double threshold = kPivotTolerance * scale;
  if (n_ > 0 && scale == 0.0) throw SingularMatrix("lu: zero matrix");

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best < threshold || best == 0.0) {
      throw SingularMatrix("lu: pivot " + std::to_string(best) + " at column " +
                           std::to_string(k) + " below threshold");
    }
    if (p != k) {
      auto rk = lu_.row(k);
      auto rp = lu_.row(p);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double m = lu_(i, k) / pivot;
      lu_(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

void LuFactorization::solve_in_place(std::span<double> x) const {
  if (x.size() != n_) throw DimensionMismatch("lu solve: right-hand side length mismatch");
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = x[perm_[i]];
  for (std::size_t i = 0; i < n_; ++i) {
    double s = y[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  std::copy(y.begin(), y.end(), x.begin());
}

DenseVector LuFactorization::solve(const DenseVector& b) const {
  DenseVector x = b;
  solve_in_place(x.span());
  return x;
}

DenseMatrix LuFactorization::solve(const DenseMatrix& b) const {
  if (b.rows() != n_) throw DimensionMismatch("lu solve: row count mismatch");
  DenseMatrix x(b.rows(), b.cols());
  std::vector<double> col(n_);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n_; ++i) col[i] = b(i, j);
    solve_in_place(col);
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = col[i];
  }
  return x;
}

double LuFactorization::determinant() const noexcept {
  double d = sign_;
  for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i);
  return d;
}

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b) { return LuFactorization(a).solve(b); }

DenseVector lu_solve(const DenseMatrix& a, const DenseVector& b) { return LuFactorization(a).solve(b); }

DenseMatrix inverse(const DenseMatrix& a) {
  return LuFactorization(a).solve(DenseMatrix::identity(a.rows()));
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

bool is_entrywise_nonneg(const DenseMatrix& a, double tol) {
  for (double v : a.data())
    if (v < -tol) return false;
  return true;
}

bool is_entrywise_nonneg(const DenseVector& x, double tol) {
  for (double v : x.span())
    if (v < -tol) return false;
  return true;
}

double condition_number_2(const DenseMatrix& a) {
  LuFactorization lu(a);  // rejects singular input up front
  (void)lu;
  const std::vector<double> ev = symmetric_eigenvalues(a.transpose() * a);
  if (ev.empty()) return 1.0;
  if (ev.front() <= 0.0) throw SingularMatrix("condition_number_2: A^T A not positive definite");
  return std::sqrt(ev.back() / ev.front());
}

}  // namespace twostage
