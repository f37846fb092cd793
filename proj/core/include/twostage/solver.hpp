#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "twostage/dense.hpp"
#include "twostage/splitting.hpp"

namespace twostage {

struct TwoStageConfig {
  /// Inner sweep counts s(0), s(1), ...; the last entry repeats.
  std::vector<std::size_t> schedule{2};
  /// Relaxation of the default inner SOR splitting of U.
  double omega = 1.0;
  /// Stop once max |X_{k+1} - X_k| <= eps.
  double eps = 1e-8;
  std::size_t max_outer = 100000;
  /// Zero when absent. Must match B's shape.
  std::optional<DenseMatrix> initial;
  /// Fill IterationReport::spectral_radius_T (stationary runs only).
  bool report_spectral_radius = false;

  std::size_t inner_count(std::size_t k) const {
    return schedule[std::min(k, schedule.size() - 1)];
  }
  bool is_stationary() const;
  /// Throws InvalidConfig.
  void validate() const;
};

struct IterationReport {
  std::size_t outer_iterations = 0;
  bool converged = false;
  double final_update_norm = 0.0;
  /// Update norm after each outer step.
  std::vector<double> residual_history;
  std::optional<double> spectral_radius_T;
  /// ||A X - B||_inf of the returned iterate.
  double residual_norm = 0.0;
};

struct SolveResult {
  DenseMatrix x;
  IterationReport report;
};

/// One outer step x <- T_s x + P_s^{-1} b done as s inner sweeps
/// F y_{j+1} = G y_j + V x + b starting from y_0 = x.
class TwoStageStepper {
 public:
  /// Throws HypothesisMismatch unless inner splits outer.U().
  TwoStageStepper(Splitting outer, Splitting inner);

  const Splitting& outer() const noexcept { return outer_; }
  const Splitting& inner() const noexcept { return inner_; }

  void step(DenseMatrix& x, const DenseMatrix& b, std::size_t s) const;
  void step(DenseVector& x, const DenseVector& b, std::size_t s) const;

 private:
  void step_column(std::span<double> x, std::span<const double> b, std::size_t s,
                   std::vector<double>& rhs, std::vector<double>& tmp) const;

  Splitting outer_;
  Splitting inner_;
};

/// Two-stage solve of A X = B with inner splitting SOR(cfg.omega) of outer.U().
/// Hitting max_outer or diverging returns the last finite iterate with
/// converged = false.
SolveResult run_stationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                           const TwoStageConfig& cfg);
SolveResult run_stationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                           const Splitting& inner, const TwoStageConfig& cfg);

/// As run_stationary, with s(k) taken from cfg.schedule per outer step.
SolveResult run_nonstationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                              const TwoStageConfig& cfg);
SolveResult run_nonstationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                              const Splitting& inner, const TwoStageConfig& cfg);

/// Classical x_{k+1} = U^{-1}(V x_k + b); cfg.schedule and cfg.omega are ignored.
SolveResult run_one_stage(const DenseMatrix& a, const DenseMatrix& b, const Splitting& split,
                          const TwoStageConfig& cfg);

}  // namespace twostage
