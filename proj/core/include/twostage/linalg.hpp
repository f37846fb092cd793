#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "twostage/dense.hpp"

namespace twostage {

/// LU factorization with partial pivoting, PA = LU.
///
/// Throws SingularMatrix when a pivot magnitude drops below
/// 1e-13 * ||A||_inf.
class LuFactorization {
 public:
  static constexpr double kPivotTolerance = 1e-13;

  explicit LuFactorization(const DenseMatrix& a);

  std::size_t size() const noexcept { return n_; }

  DenseMatrix solve(const DenseMatrix& b) const;
  DenseVector solve(const DenseVector& b) const;
  /// Overwrites x (holding the right-hand side) with the solution.
  void solve_in_place(std::span<double> x) const;

  double determinant() const noexcept;

 private:
  std::size_t n_ = 0;
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b);
DenseVector lu_solve(const DenseMatrix& a, const DenseVector& b);
DenseMatrix inverse(const DenseMatrix& a);

/// Block (i, j) of the result is a(i, j) * b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

bool is_entrywise_nonneg(const DenseMatrix& a, double tol = 0.0);
bool is_entrywise_nonneg(const DenseVector& x, double tol = 0.0);

enum class EigenMethod { Auto, PowerIteration, HessenbergQr };

struct SpectralRadius {
  double value = 0.0;
  EigenMethod method = EigenMethod::Auto;
  std::size_t iterations = 0;
};

/// Maximum eigenvalue modulus.
///
/// Auto runs a shifted power iteration (Collatz-Wielandt bounds) on
/// entrywise-nonnegative input and falls back to Hessenberg QR when that
/// has not closed the bounds within 1000 steps, e.g. on reducible matrices.
/// PowerIteration requires nonnegative input and throws NoConvergence after `power_cap` steps.
SpectralRadius spectral_radius_detailed(const DenseMatrix& a, double tol = 1e-12,
                                        EigenMethod method = EigenMethod::Auto,
                                        std::size_t power_cap = 100000);

double spectral_radius(const DenseMatrix& a, double tol = 1e-12);

struct ComplexEigenvalue {
  double re = 0.0;
  double im = 0.0;
};

/// All eigenvalues via balancing, Hessenberg reduction and Francis QR.
std::vector<ComplexEigenvalue> eigenvalues(const DenseMatrix& a);

/// Eigenvalue moduli in descending order.
std::vector<double> eigenvalue_moduli(const DenseMatrix& a);

struct PerronPair {
  double value = 0.0;
  DenseVector vector;  // nonnegative, ||vector||_inf = 1
  std::size_t iterations = 0;
};

/// Perron root and eigenvector of an entrywise-nonnegative matrix.
PerronPair perron_vector(const DenseMatrix& a, double tol = 1e-13,
                         std::size_t max_iterations = 100000, std::uint64_t seed = 0x5eed);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

/// sigma_max / sigma_min from the eigenvalues of A^T A.
double condition_number_2(const DenseMatrix& a);

}  // namespace twostage
