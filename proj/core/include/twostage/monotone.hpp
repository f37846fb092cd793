#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twostage/cone.hpp"
#include "twostage/dense.hpp"
#include "twostage/solver.hpp"
#include "twostage/splitting.hpp"

namespace twostage {

struct MonotoneHypotheses {
  bool outer_regular = false;
  bool inner_weak_type2 = false;
  bool commutation = false;
  bool a_monotone = false;  // A^{-1} >=_K 0
  bool a_nonneg = false;    // A >=_K 0
  bool t_nonneg = false;    // T_s >=_K 0 for every s used
  bool x1_ge_x0 = false;
  bool y0_ge_y1 = false;
  bool y0_ge_solution = false;
  bool solution_ge_x0 = false;

  /// Every condition as literally stated, including A >=_K 0.
  bool literal() const;
  /// The same with A >=_K 0 replaced by T_s >=_K 0, which is what makes
  /// x_{k+1} - x_k = T_s (x_k - x_{k-1}) stay in K.
  bool relaxed() const;
};

struct MonotoneRun {
  std::vector<DenseVector> xs;  // x_0, x_1, ...
  std::vector<DenseVector> ys;
  DenseVector solution;         // A^{-1} b by LU
  MonotoneHypotheses hypotheses;
  bool literal_hypotheses = false;
  std::size_t iterations = 0;
  bool converged = false;
  double final_gap = 0.0;       // ||y_k - x_k||_inf at exit
  bool sandwich_held = true;
  /// Largest amount by which any x_k <= x_{k+1} <= A^{-1}b <= y_{k+1} <= y_k
  /// link failed, in cone coordinates.
  double max_order_violation = 0.0;
  double order_tolerance = 0.0;
};

/// Runs x_{k+1} = T_s x_k + P_s^{-1} b and the same from y_0 until
/// ||y_k - x_k||_inf <= cfg.eps.
///
/// Throws HypothesisFailed naming the first failed condition; A >=_K 0 may be
/// replaced by T_s >=_K 0. Throws MaxIterations after cfg.max_outer steps.
MonotoneRun monotone_bracket(const DenseMatrix& a, const DenseVector& b, const DenseVector& x0,
                             const DenseVector& y0, const Splitting& outer,
                             const Splitting& inner, const TwoStageConfig& cfg,
                             const SimplicialCone& k);

/// Inner splitting SOR(cfg.omega) of outer.U().
MonotoneRun monotone_bracket(const DenseMatrix& a, const DenseVector& b, const DenseVector& x0,
                             const DenseVector& y0, const Splitting& outer,
                             const TwoStageConfig& cfg, const SimplicialCone& k);

/// (A^{-1}b - z, A^{-1}b + z) with z = A^{-1}x and x the Perron vector of
/// That_s (||x||_inf = 1). Throws HypothesisFailed if rho(T_s) >= 1 or
/// That_s is not K-nonnegative.
std::pair<DenseVector, DenseVector> bracketing_initials(const Splitting& outer,
                                                        const Splitting& inner, std::size_t s,
                                                        const DenseVector& b,
                                                        const SimplicialCone& k);

}  // namespace twostage
