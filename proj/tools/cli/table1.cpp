#include <future>

#include "cli/cli.hpp"
#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"
#include "twostage/solver.hpp"
#include "twostage/splitting.hpp"

namespace twostage::cli {
namespace {

SweepRow sweep_row(const epi::SaiuqrParams& params, const Table1Options& opts, std::size_t size,
                   double phi) {
  const epi::SaiuqrParams p = params.with_phi(phi);
  DenseMatrix a = epi::build_transition(p);
  DenseMatrix b = epi::build_infection(p);
  if (size != 4) {
    if (size % 4 != 0) throw InvalidConfig("table1: sizes must be multiples of 4");
    const std::size_t m = size / 4;
    const epi::AgeStructure age = opts.age ? *opts.age : epi::AgeStructure::same_group_only(m);
    if (age.groups() != m) {
      throw InvalidConfig("table1: size " + std::to_string(size) + " needs " + std::to_string(m) +
                          " age groups, contact data has " + std::to_string(age.groups()));
    }
    std::tie(a, b) = epi::expand_age(a, b, age);
  }

  TwoStageConfig cfg;
  cfg.schedule = opts.schedule;
  cfg.eps = opts.eps;
  cfg.max_outer = opts.max_outer;
  cfg.report_spectral_radius = true;

  const Splitting outer =
      opts.outer == "jacobi" ? jacobi_splitting(a) : gauss_seidel_splitting(a);

  SweepRow row;
  row.size = size;
  row.phi = phi;
  row.kappa2 = condition_number_2(a);

  const SolveResult one = run_one_stage(a, b, jacobi_splitting(a), cfg);
  cfg.omega = opts.omega_low;
  const SolveResult low = run_stationary(a, b, outer, cfg);
  cfg.omega = opts.omega_high;
  const SolveResult high = run_stationary(a, b, outer, cfg);

  row.one_stage_iters = one.report.outer_iterations;
  row.two_stage_w1_iters = low.report.outer_iterations;
  row.two_stage_w17_iters = high.report.outer_iterations;
  row.rho_T_w1 = low.report.spectral_radius_T.value_or(0.0);
  row.rho_T_w17 = high.report.spectral_radius_T.value_or(0.0);
  row.converged = one.report.converged && low.report.converged && high.report.converged;
  return row;
}

}  // namespace

std::vector<SweepRow> table1_rows(const epi::SaiuqrParams& params, const Table1Options& opts) {
  if (opts.outer != "jacobi" && opts.outer != "gauss-seidel") {
    throw InvalidConfig("table1: outer splitting must be jacobi or gauss-seidel");
  }
  std::vector<std::future<SweepRow>> jobs;
  for (std::size_t size : opts.sizes)
    for (double phi : opts.phis)
      jobs.push_back(std::async(std::launch::async, sweep_row, std::cref(params), std::cref(opts),
                                size, phi));
  std::vector<SweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

}  // namespace twostage::cli
