#include "twostage/monotone.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"
#include "twostage/operators.hpp"

namespace twostage {
namespace {

// How far w - u falls outside K, measured in cone coordinates.
double order_violation(const SimplicialCone& k, const DenseVector& u, const DenseVector& w) {
  const DenseVector c = k.coordinates(w - u);
  double worst = 0.0;
  for (double v : c.values()) worst = std::max(worst, -v);
  return worst;
}

bool nonneg(const SimplicialCone& k, const DenseMatrix& m) {
  return k.leaves_invariant(m, magnitude_scale({&m}));
}

void require(bool ok, const char* hypothesis) {
  if (!ok) throw HypothesisFailed(hypothesis, "");
}

}  // namespace

bool MonotoneHypotheses::literal() const {
  return outer_regular && inner_weak_type2 && commutation && a_monotone && a_nonneg && x1_ge_x0 &&
         y0_ge_y1 && y0_ge_solution && solution_ge_x0;
}

bool MonotoneHypotheses::relaxed() const {
  return outer_regular && inner_weak_type2 && commutation && a_monotone &&
         (a_nonneg || t_nonneg) && x1_ge_x0 && y0_ge_y1 && y0_ge_solution && solution_ge_x0;
}

MonotoneRun monotone_bracket(const DenseMatrix& a, const DenseVector& b, const DenseVector& x0,
                             const DenseVector& y0, const Splitting& outer,
                             const Splitting& inner, const TwoStageConfig& cfg,
                             const SimplicialCone& k) {
  cfg.validate();
  const std::size_t n = a.rows();
  if (b.size() != n || x0.size() != n || y0.size() != n || k.dim() != n) {
    throw DimensionMismatch("monotone_bracket: dimension mismatch");
  }
  if (max_abs_diff(outer.A(), a) >
      Splitting::kReconstructionTolerance * std::max(1.0, norm_inf(a))) {
    throw SplittingMismatch("monotone_bracket: outer splitting is not a splitting of A");
  }
  const TwoStageStepper stepper(outer, inner);

  MonotoneRun run;
  MonotoneHypotheses& h = run.hypotheses;
  h.outer_regular = classify(outer, k).regular;
  require(h.outer_regular, "outer splitting K-regular");
  h.inner_weak_type2 = classify(inner, k).weak_type2;
  require(h.inner_weak_type2, "inner splitting K-weak regular of type II");
  h.commutation = commutation_holds(outer.V(), inner.U(), inner.V());
  require(h.commutation, "V F^-1 G = G F^-1 V");
  const DenseMatrix a_inv = inverse(a);
  h.a_monotone = nonneg(k, a_inv);
  require(h.a_monotone, "A^-1 >=_K 0");
  h.a_nonneg = nonneg(k, a);
  std::set<std::size_t> counts(cfg.schedule.begin(), cfg.schedule.end());
  h.t_nonneg = std::all_of(counts.begin(), counts.end(), [&](std::size_t s) {
    return nonneg(k, build_T(outer, inner, s));
  });
  require(h.a_nonneg || h.t_nonneg, "A >=_K 0 (or T_s >=_K 0)");

  run.solution = a_inv * b;
  const double scale = std::max({1.0, norm_inf(run.solution), norm_inf(x0), norm_inf(y0)});
  run.order_tolerance = k.tol() * scale;
  const auto le = [&](const DenseVector& u, const DenseVector& w) {
    return order_violation(k, u, w) <= run.order_tolerance;
  };

  DenseVector x = x0;
  DenseVector y = y0;
  run.xs.push_back(x);
  run.ys.push_back(y);

  DenseVector x1 = x;
  DenseVector y1 = y;
  stepper.step(x1, b, cfg.inner_count(0));
  stepper.step(y1, b, cfg.inner_count(0));
  h.x1_ge_x0 = le(x0, x1);
  h.y0_ge_y1 = le(y1, y0);
  h.y0_ge_solution = le(run.solution, y0);
  h.solution_ge_x0 = le(x0, run.solution);
  require(h.x1_ge_x0, "x1 >=_K x0");
  require(h.y0_ge_y1, "y0 >=_K y1");
  require(h.y0_ge_solution, "y0 >=_K A^-1 b");
  require(h.solution_ge_x0, "A^-1 b >=_K x0");
  run.literal_hypotheses = h.literal();

  run.final_gap = max_abs_diff(y, x);
  for (std::size_t it = 0; run.final_gap > cfg.eps; ++it) {
    if (it == cfg.max_outer) {
      throw MaxIterations("monotone_bracket: no convergence after " +
                          std::to_string(cfg.max_outer) + " steps");
    }
    DenseVector xn = x;
    DenseVector yn = y;
    stepper.step(xn, b, cfg.inner_count(it));
    stepper.step(yn, b, cfg.inner_count(it));
    const double worst = std::max({order_violation(k, x, xn), order_violation(k, xn, run.solution),
                                   order_violation(k, run.solution, yn),
                                   order_violation(k, yn, y)});
    run.max_order_violation = std::max(run.max_order_violation, worst);
    if (worst > run.order_tolerance) run.sandwich_held = false;
    x = std::move(xn);
    y = std::move(yn);
    run.xs.push_back(x);
    run.ys.push_back(y);
    ++run.iterations;
    run.final_gap = max_abs_diff(y, x);
  }
  run.converged = true;
  return run;
}

MonotoneRun monotone_bracket(const DenseMatrix& a, const DenseVector& b, const DenseVector& x0,
                             const DenseVector& y0, const Splitting& outer,
                             const TwoStageConfig& cfg, const SimplicialCone& k) {
  cfg.validate();
  return monotone_bracket(a, b, x0, y0, outer, sor_splitting(outer.U(), cfg.omega), cfg, k);
}

std::pair<DenseVector, DenseVector> bracketing_initials(const Splitting& outer,
                                                        const Splitting& inner, std::size_t s,
                                                        const DenseVector& b,
                                                        const SimplicialCone& k) {
  const DenseMatrix t_hat = build_T_hat(outer, inner, s);
  const double rho = spectral_radius(build_T(outer, inner, s));
  if (!(rho < 1.0)) {
    throw HypothesisFailed("rho(T_s) < 1", "rho = " + std::to_string(rho));
  }
  if (!nonneg(k, t_hat)) throw HypothesisFailed("That_s >=_K 0", "");
  DenseMatrix coords = k.coordinates(t_hat);
  for (double& v : coords.data()) v = std::max(v, 0.0);  // clear roundoff-level negatives
  const PerronPair perron = perron_vector(coords);
  DenseVector x = k.from_coordinates(perron.vector);
  x = (1.0 / norm_inf(x)) * x;
  const LuFactorization lu(outer.A());
  const DenseVector z = lu.solve(x);
  const DenseVector sol = lu.solve(b);
  return {sol - z, sol + z};
}

}  // namespace twostage
