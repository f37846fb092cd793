#pragma once

#include <cstddef>
#include <memory>

#include "twostage/cone.hpp"
#include "twostage/dense.hpp"
#include "twostage/linalg.hpp"

namespace twostage {

/// A = U - V with U nonsingular. U's LU factors are cached and shared
/// between copies.
class Splitting {
 public:
  static constexpr double kReconstructionTolerance = 1e-12;

  /// Throws SplittingMismatch if A != U - V (within 1e-12 * max(1, ||A||_inf))
  /// and SingularMatrix if U is singular.
  Splitting(DenseMatrix a, DenseMatrix u, DenseMatrix v);

  /// Splitting of U - V.
  static Splitting from_uv(DenseMatrix u, DenseMatrix v);

  const DenseMatrix& A() const noexcept { return a_; }
  const DenseMatrix& U() const noexcept { return u_; }
  const DenseMatrix& V() const noexcept { return v_; }
  std::size_t size() const noexcept { return a_.rows(); }

  const LuFactorization& u_factors() const noexcept { return *lu_; }
  DenseMatrix u_inverse() const;

 private:
  DenseMatrix a_;
  DenseMatrix u_;
  DenseMatrix v_;
  std::shared_ptr<const LuFactorization> lu_;
};

struct SplittingClass {
  bool regular = false;     // U^{-1} >=_K 0 and V >=_K 0
  bool weak_type1 = false;  // U^{-1} >=_K 0 and U^{-1}V >=_K 0
  bool weak_type2 = false;  // U^{-1} >=_K 0 and VU^{-1} >=_K 0
};

SplittingClass classify(const Splitting& s, const SimplicialCone& k);

/// H = U^{-1} V
DenseMatrix iteration_matrix(const Splitting& s);

struct ConvergenceCheck {
  bool convergent = false;
  double rho = 0.0;
};

/// rho(U^{-1}V) < 1 - tol.
ConvergenceCheck check_convergence(const Splitting& s, double tol = 1e-12);
bool is_convergent(const Splitting& s, double tol = 1e-12);

Splitting jacobi_splitting(const DenseMatrix& a);
Splitting gauss_seidel_splitting(const DenseMatrix& a);
/// U = D/omega - L, V = ((1 - omega)/omega) D + R for A = D - L - R.
Splitting sor_splitting(const DenseMatrix& a, double omega);

/// ||V F^{-1} G - G F^{-1} V||_inf <= tol * (1 + ||V|| ||F^{-1}|| ||G||).
bool commutation_holds(const DenseMatrix& v, const DenseMatrix& f, const DenseMatrix& g,
                       double tol = 1e-10);

/// Throws HypothesisMismatch unless inner splits outer.U().
void require_inner_of(const Splitting& outer, const Splitting& inner);

struct InducedSplitting {
  Splitting splitting;        // A = B - C with B = A (I - T_s)^{-1}
  bool commuting = false;     // V F^{-1} G = G F^{-1} V held
  double hat_route_gap = 0.0; // max |B - (I - That_s)^{-1} A| / max(1, max|B|)
};

/// Splitting whose one-stage iteration matrix is the two-stage operator T_s.
/// When the commutation hypothesis holds, B is also computed as
/// (I - That_s)^{-1} A and the relative gap between the two is reported.
InducedSplitting induced_splitting(const Splitting& outer, const Splitting& inner, std::size_t s);

}  // namespace twostage
