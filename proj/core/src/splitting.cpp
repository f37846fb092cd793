#include "twostage/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twostage/errors.hpp"
#include "twostage/operators.hpp"

namespace twostage {
namespace {

bool close_to(const DenseMatrix& x, const DenseMatrix& y, double scale_of) {
  return max_abs_diff(x, y) <= Splitting::kReconstructionTolerance * std::max(1.0, scale_of);
}

struct DiagonalParts {
  DenseMatrix d, l, r;  // A = D - L - R
};

DiagonalParts diagonal_parts(const DenseMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("splitting: matrix not square");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, i) == 0.0) throw ZeroDiagonal("splitting: zero diagonal entry at row " + std::to_string(i));
  }
  return {a.diagonal_part(), -a.strictly_lower(), -a.strictly_upper()};
}

}  // namespace

Splitting::Splitting(DenseMatrix a, DenseMatrix u, DenseMatrix v)
    : a_(std::move(a)), u_(std::move(u)), v_(std::move(v)) {
  if (!a_.is_square() || u_.rows() != a_.rows() || u_.cols() != a_.cols() ||
      v_.rows() != a_.rows() || v_.cols() != a_.cols()) {
    throw DimensionMismatch("Splitting: A, U, V must be square of equal size");
  }
  if (!close_to(a_, u_ - v_, norm_inf(a_))) {
    throw SplittingMismatch("Splitting: A != U - V (max deviation " +
                            std::to_string(max_abs_diff(a_, u_ - v_)) + ")");
  }
  lu_ = std::make_shared<const LuFactorization>(u_);
}

Splitting Splitting::from_uv(DenseMatrix u, DenseMatrix v) {
  DenseMatrix a = u - v;
  return {std::move(a), std::move(u), std::move(v)};
}

DenseMatrix Splitting::u_inverse() const { return lu_->solve(DenseMatrix::identity(size())); }

SplittingClass classify(const Splitting& s, const SimplicialCone& k) {
  const DenseMatrix u_inv = s.u_inverse();
  const DenseMatrix h = u_inv * s.V();
  const DenseMatrix h_hat = s.V() * u_inv;
  SplittingClass c;
  const bool u_inv_nonneg = k.leaves_invariant(u_inv, magnitude_scale({&u_inv}));
  c.regular = u_inv_nonneg && k.leaves_invariant(s.V(), magnitude_scale({&s.V()}));
  c.weak_type1 = u_inv_nonneg && (c.regular || k.leaves_invariant(h, magnitude_scale({&h})));
  c.weak_type2 = u_inv_nonneg && (c.regular || k.leaves_invariant(h_hat, magnitude_scale({&h_hat})));
  return c;
}

DenseMatrix iteration_matrix(const Splitting& s) { return s.u_factors().solve(s.V()); }

ConvergenceCheck check_convergence(const Splitting& s, double tol) {
  const double rho = spectral_radius(iteration_matrix(s));
  return {rho < 1.0 - tol, rho};
}

bool is_convergent(const Splitting& s, double tol) { return check_convergence(s, tol).convergent; }

Splitting jacobi_splitting(const DenseMatrix& a) {
  auto p = diagonal_parts(a);
  return {a, p.d, p.d - a};
}

Splitting gauss_seidel_splitting(const DenseMatrix& a) {
  auto p = diagonal_parts(a);
  return {a, p.d - p.l, p.r};
}

Splitting sor_splitting(const DenseMatrix& a, double omega) {
  if (!(omega > 0.0 && omega < 2.0)) {
    throw BadRelaxation("sor_splitting: omega must lie in (0, 2), got " + std::to_string(omega));
  }
  auto p = diagonal_parts(a);
  return {a, (1.0 / omega) * p.d - p.l, ((1.0 - omega) / omega) * p.d + p.r};
}

bool commutation_holds(const DenseMatrix& v, const DenseMatrix& f, const DenseMatrix& g,
                       double tol) {
  const DenseMatrix f_inv = inverse(f);
  const DenseMatrix lhs = v * f_inv * g;
  const DenseMatrix rhs = g * f_inv * v;
  const double bound = tol * (1.0 + norm_inf(v) * norm_inf(f_inv) * norm_inf(g));
  return norm_inf(lhs - rhs) <= bound;
}

void require_inner_of(const Splitting& outer, const Splitting& inner) {
  if (inner.size() != outer.size() || !close_to(inner.A(), outer.U(), norm_inf(outer.U()))) {
    throw HypothesisMismatch("inner splitting does not split the outer U");
  }
}

InducedSplitting induced_splitting(const Splitting& outer, const Splitting& inner, std::size_t s) {
  const DenseMatrix t = build_T(outer, inner, s);
  const DenseMatrix id = DenseMatrix::identity(outer.size());
  const DenseMatrix& a = outer.A();
  // B (I - T) = A, solved through the transpose.
  DenseMatrix b = lu_solve((id - t).transpose(), a.transpose()).transpose();
  DenseMatrix c = b - a;
  InducedSplitting out{Splitting(a, b, std::move(c)), false, 0.0};
  out.commuting = commutation_holds(outer.V(), inner.U(), inner.V());
  if (out.commuting) {
    const DenseMatrix b_hat = lu_solve(id - build_T_hat(outer, inner, s), a);
    out.hat_route_gap = max_abs_diff(b, b_hat) / std::max(1.0, max_abs(b));
  }
  return out;
}

}  // namespace twostage
