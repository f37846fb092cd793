#include "oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oracle {
namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  std::vector<std::vector<double>> w(n, std::vector<double>(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a(i, j);
    for (std::size_t j = 0; j < m; ++j) w[i][n + j] = b(i, j);
  }
  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(w[i][j]) > std::abs(w[pr][pc])) pr = i, pc = j;
    if (w[pr][pc] == 0.0) throw std::runtime_error("oracle: singular matrix");
    std::swap(w[k], w[pr]);
    if (pc != k) {
      for (auto& row : w) std::swap(row[k], row[pc]);
      std::swap(col[k], col[pc]);
    }
    const double piv = w[k][k];
    for (double& v : w[k]) v /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w[i][k] == 0.0) continue;
      const double f = w[i][k];
      for (std::size_t j = 0; j < n + m; ++j) w[i][j] -= f * w[k][j];
    }
  }
  DenseMatrix x(n, m);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < m; ++j) x(col[k], j) = w[k][n + j];
  return x;
}

DenseMatrix inverse(const DenseMatrix& a) {
  DenseMatrix id(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) id(i, i) = 1.0;
  return solve(a, id);
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

double spectral_radius(const DenseMatrix& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double condition_number_2(const DenseMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

bool entrywise_ge(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) - b(i, j) < -tol) return false;
  return true;
}

bool cone_ge(const DenseMatrix& p, const DenseMatrix& a, const DenseMatrix& b, double tol) {
  DenseMatrix d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(i, j) = a(i, j) - b(i, j);
  const DenseMatrix c = multiply(multiply(inverse(p), d), p);
  return entrywise_ge(c, DenseMatrix(c.rows(), c.cols()), tol);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace oracle
