#include "twostage/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twostage/errors.hpp"
#include "twostage/operators.hpp"

namespace twostage {

bool TwoStageConfig::is_stationary() const {
  return std::all_of(schedule.begin(), schedule.end(),
                     [this](std::size_t s) { return s == schedule.front(); });
}

void TwoStageConfig::validate() const {
  if (schedule.empty()) throw InvalidConfig("schedule must not be empty");
  if (std::any_of(schedule.begin(), schedule.end(), [](std::size_t s) { return s == 0; })) {
    throw InvalidConfig("every inner count s(k) must be at least 1");
  }
  if (!(omega > 0.0 && omega < 2.0)) throw InvalidConfig("omega must lie in (0, 2)");
  if (!(eps > 0.0)) throw InvalidConfig("eps must be positive");
  if (max_outer < 1) throw InvalidConfig("max_outer must be at least 1");
}

TwoStageStepper::TwoStageStepper(Splitting outer, Splitting inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  require_inner_of(outer_, inner_);
}

void TwoStageStepper::step_column(std::span<double> x, std::span<const double> b, std::size_t s,
                                  std::vector<double>& rhs, std::vector<double>& tmp) const {
  const std::size_t n = x.size();
  multiply(outer_.V(), x, rhs);
  for (std::size_t i = 0; i < n; ++i) rhs[i] += b[i];
  for (std::size_t j = 0; j < s; ++j) {
    multiply(inner_.V(), x, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] += rhs[i];
    inner_.u_factors().solve_in_place(tmp);
    std::copy(tmp.begin(), tmp.end(), x.begin());
  }
}

void TwoStageStepper::step(DenseVector& x, const DenseVector& b, std::size_t s) const {
  const std::size_t n = outer_.size();
  if (x.size() != n || b.size() != n) throw DimensionMismatch("step: vector length mismatch");
  std::vector<double> rhs(n), tmp(n);
  step_column(x.span(), b.span(), s, rhs, tmp);
}

void TwoStageStepper::step(DenseMatrix& x, const DenseMatrix& b, std::size_t s) const {
  const std::size_t n = outer_.size();
  if (x.rows() != n || b.rows() != n || x.cols() != b.cols()) {
    throw DimensionMismatch("step: matrix shape mismatch");
  }
  std::vector<double> col(n), bcol(n), rhs(n), tmp(n);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      col[i] = x(i, c);
      bcol[i] = b(i, c);
    }
    step_column(col, bcol, s, rhs, tmp);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = col[i];
  }
}

namespace {

void check_system(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer) {
  if (!a.is_square() || b.rows() != a.rows()) {
    throw DimensionMismatch("solve: A must be square with B of matching row count");
  }
  if (outer.size() != a.rows() ||
      max_abs_diff(outer.A(), a) >
          Splitting::kReconstructionTolerance * std::max(1.0, norm_inf(a))) {
    throw SplittingMismatch("solve: outer splitting is not a splitting of A");
  }
}

SolveResult iterate(const DenseMatrix& a, const DenseMatrix& b, const TwoStageStepper& stepper,
                    const TwoStageConfig& cfg) {
  SolveResult out;
  DenseMatrix x = cfg.initial ? *cfg.initial : DenseMatrix(b.rows(), b.cols());
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    throw DimensionMismatch("solve: initial guess shape differs from B");
  }
  IterationReport& rep = out.report;
  rep.residual_history.reserve(std::min<std::size_t>(cfg.max_outer, 4096));
  DenseMatrix next = x;
  for (std::size_t k = 0; k < cfg.max_outer; ++k) {
    stepper.step(next, b, cfg.inner_count(k));
    const double update = max_abs_diff(next, x);
    ++rep.outer_iterations;
    rep.residual_history.push_back(update);
    rep.final_update_norm = update;
    if (!std::isfinite(update) || !next.is_finite()) break;
    x = next;
    if (update <= cfg.eps) {
      rep.converged = true;
      break;
    }
  }
  rep.residual_norm = norm_inf(a * x - b);
  if (cfg.report_spectral_radius && cfg.is_stationary()) {
    rep.spectral_radius_T =
        spectral_radius(build_T(stepper.outer(), stepper.inner(), cfg.schedule.front()));
  }
  out.x = std::move(x);
  return out;
}

}  // namespace

SolveResult run_nonstationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                              const Splitting& inner, const TwoStageConfig& cfg) {
  cfg.validate();
  check_system(a, b, outer);
  return iterate(a, b, TwoStageStepper(outer, inner), cfg);
}

SolveResult run_nonstationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                              const TwoStageConfig& cfg) {
  cfg.validate();
  return run_nonstationary(a, b, outer, sor_splitting(outer.U(), cfg.omega), cfg);
}

SolveResult run_stationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                           const Splitting& inner, const TwoStageConfig& cfg) {
  cfg.validate();
  if (!cfg.is_stationary()) throw InvalidConfig("run_stationary: schedule must be constant");
  return run_nonstationary(a, b, outer, inner, cfg);
}

SolveResult run_stationary(const DenseMatrix& a, const DenseMatrix& b, const Splitting& outer,
                           const TwoStageConfig& cfg) {
  cfg.validate();
  return run_stationary(a, b, outer, sor_splitting(outer.U(), cfg.omega), cfg);
}

SolveResult run_one_stage(const DenseMatrix& a, const DenseMatrix& b, const Splitting& split,
                          const TwoStageConfig& cfg) {
  TwoStageConfig one = cfg;
  one.schedule = {1};
  one.omega = 1.0;
  const std::size_t n = split.size();
  Splitting exact(split.U(), split.U(), DenseMatrix(n, n));
  return run_stationary(a, b, split, exact, one);
}

}  // namespace twostage
