#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twostage/epimodel.hpp"

namespace twostage::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidInput = 2,
  kSplittingMismatch = 3,
  kSingularU = 4,
  kSingularTransition = 5,
  kNoConvergence = 6,
  kHypothesisFailed = 7,
  kNotMonotone = 8,
  kPredictionViolated = 9,
};

/// Entry point shared by the executable and in-process tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Table1Options {
  std::vector<double> phis{0.07, 0.08, 0.09, 0.10};
  std::vector<std::size_t> sizes{4, 64};
  /// The two relaxation factors compared against the one-stage method.
  double omega_low = 1.0;
  double omega_high = 1.7;
  double eps = 1e-8;
  std::vector<std::size_t> schedule{1};
  /// "gauss-seidel" or "jacobi"; the one-stage baseline is always Jacobi.
  std::string outer = "gauss-seidel";
  std::size_t max_outer = 100000;
  /// Coupling used for sizes other than 4; K = I when absent.
  std::optional<epi::AgeStructure> age;
};

struct SweepRow {
  std::size_t size = 0;
  double phi = 0.0;
  std::size_t one_stage_iters = 0;
  std::size_t two_stage_w1_iters = 0;
  std::size_t two_stage_w17_iters = 0;
  double kappa2 = 0.0;
  double rho_T_w1 = 0.0;
  double rho_T_w17 = 0.0;
  bool converged = true;
};

/// Rows ordered by (size, phi) in option order; computed concurrently.
std::vector<SweepRow> table1_rows(const epi::SaiuqrParams& params, const Table1Options& opts);

}  // namespace twostage::cli
