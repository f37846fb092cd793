#include "twostage/comparison.hpp"

#include <algorithm>

#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"
#include "twostage/operators.hpp"

namespace twostage {
namespace {

bool ordered(double rho1, double rho2) {
  return rho1 <= rho2 + ComparisonReport::kSlack && rho2 < 1.0;
}

bool nonneg(const SimplicialCone& k, const DenseMatrix& m) {
  return k.leaves_invariant(m, magnitude_scale({&m}));
}

bool ge(const SimplicialCone& k, const DenseMatrix& big, const DenseMatrix& small) {
  return k.le(small, big, magnitude_scale({&big, &small}));
}

class ReportBuilder {
 public:
  explicit ReportBuilder(ComparisonReport& r) : r_(r) {}

  bool flag(const std::string& name, bool value) {
    r_.hypotheses.emplace_back(name, value);
    return value;
  }

  void check(const std::string& name, bool hypotheses_hold) {
    r_.checks.push_back({name, hypotheses_hold, ordered(r_.rho1, r_.rho2)});
  }

 private:
  ComparisonReport& r_;
};

}  // namespace

bool ComparisonReport::hypothesis(const std::string& name) const {
  for (const auto& [key, value] : hypotheses)
    if (key == name) return value;
  return false;
}

bool ComparisonReport::any_applicable() const {
  return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.hypotheses_hold; });
}

bool ComparisonReport::any_violation() const {
  return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.violated(); });
}

void require_monotone(const DenseMatrix& a, const SimplicialCone& k) {
  const DenseMatrix a_inv = inverse(a);
  if (!nonneg(k, a_inv)) throw NotMonotone("A^{-1} is not nonnegative with respect to the cone");
}

ComparisonReport compare_splittings(const Splitting& s1, const Splitting& s2,
                                    const SimplicialCone& k) {
  if (s1.size() != s2.size() ||
      max_abs_diff(s1.A(), s2.A()) >
          Splitting::kReconstructionTolerance * std::max(1.0, norm_inf(s1.A()))) {
    throw MismatchedA("compare_splittings: splittings of different matrices");
  }
  require_monotone(s1.A(), k);

  ComparisonReport r;
  r.rho1 = spectral_radius(iteration_matrix(s1));
  r.rho2 = spectral_radius(iteration_matrix(s2));
  ReportBuilder b(r);

  const SplittingClass c1 = classify(s1, k);
  const SplittingClass c2 = classify(s2, k);
  b.flag("s1_regular", c1.regular);
  b.flag("s1_weak_type1", c1.weak_type1);
  const bool t2_1 = b.flag("s1_weak_type2", c1.weak_type2);
  b.flag("s2_regular", c2.regular);
  b.flag("s2_weak_type1", c2.weak_type1);
  const bool t2_2 = b.flag("s2_weak_type2", c2.weak_type2);

  const bool v_order = b.flag("v2_ge_v1", ge(k, s2.V(), s1.V()));
  const DenseMatrix u1_inv = s1.u_inverse();
  const DenseMatrix u2_inv = s2.u_inverse();
  const bool u_inv_order = b.flag("u1_inv_ge_u2_inv", ge(k, u1_inv, u2_inv));
  const bool u_order = b.flag("u2_ge_u1_ge_0", ge(k, s2.U(), s1.U()) && nonneg(k, s1.U()));

  const bool mixed = (c1.weak_type1 && c2.weak_type2) || (c1.weak_type2 && c2.weak_type1);
  b.check("type2_v_order", t2_1 && t2_2 && v_order);
  b.check("mixed_types_u_inverse_order", mixed && u_inv_order);
  b.check("type2_u_order", t2_1 && t2_2 && u_order);
  return r;
}

ComparisonReport compare_inner_splittings(const Splitting& outer, const Splitting& inner1,
                                          const Splitting& inner2, std::size_t s,
                                          const SimplicialCone& k) {
  require_inner_of(outer, inner1);
  require_inner_of(outer, inner2);
  require_monotone(outer.A(), k);

  const DenseMatrix& a = outer.A();
  const DenseMatrix& u = outer.U();
  const DenseMatrix& v = outer.V();
  const DenseMatrix& g = inner1.V();
  const DenseMatrix& gb = inner2.V();

  ComparisonReport r;
  r.rho1 = spectral_radius(build_T(outer, inner1, s));
  r.rho2 = spectral_radius(build_T(outer, inner2, s));
  ReportBuilder b(r);

  const bool outer_regular = b.flag("outer_regular", classify(outer, k).regular);
  const SplittingClass c1 = classify(inner1, k);
  const SplittingClass c2 = classify(inner2, k);
  const bool i1_t1 = b.flag("inner1_weak_type1", c1.weak_type1);
  const bool i1_t2 = b.flag("inner1_weak_type2", c1.weak_type2);
  const bool i2_t2 = b.flag("inner2_weak_type2", c2.weak_type2);
  const bool comm1 = b.flag("inner1_commutes", commutation_holds(v, inner1.U(), g));
  const bool comm2 = b.flag("inner2_commutes", commutation_holds(v, inner2.U(), gb));

  const DenseMatrix f_inv = inner1.u_inverse();
  const DenseMatrix fb_inv = inner2.u_inverse();
  const DenseMatrix gf = g * f_inv;
  const DenseMatrix gfb = gb * fb_inv;
  const DenseMatrix fg = f_inv * g;
  const DenseMatrix fgb = fb_inv * gb;

  // Induced splittings A = P - That P, with That P = P - A.
  const DenseMatrix p1 = inverse(build_P_inv(inner1, s));
  const DenseMatrix p2 = inverse(build_P_inv(inner2, s));
  const DenseMatrix c1_induced = p1 - a;
  const DenseMatrix c2_induced = p2 - a;

  const bool u_nonneg = b.flag("u_nonneg", nonneg(k, u));
  const bool gf_order = b.flag("gbar_fbar_inv_ge_g_f_inv", ge(k, gfb, gf));
  const bool g_dom = b.flag("g_ge_g_f_inv_g", ge(k, g, gf * g));
  const bool induced1_nonneg = b.flag("induced1_v_nonneg", nonneg(k, c1_induced));
  const bool induced2_nonneg = b.flag("induced2_v_nonneg", nonneg(k, c2_induced));
  const bool induced_order = b.flag("induced2_v_ge_induced1_v", ge(k, c2_induced, c1_induced));
  const bool f_inv_order = b.flag("f_inv_ge_fbar_inv", ge(k, f_inv, fb_inv));
  const bool fgb_nonneg = b.flag("fbar_inv_gbar_nonneg", nonneg(k, fgb));
  const bool fg_order = b.flag("f_inv_g_ge_fbar_inv_gbar", ge(k, fg, fgb));

  const bool both_t2 = outer_regular && i1_t2 && i2_t2 && comm1 && comm2;
  b.check("inner_u_nonneg_gf_order", both_t2 && u_nonneg && gf_order);
  b.check("inner_g_dominance_gf_order", both_t2 && g_dom && gf_order);
  b.check("inner_gf_order_induced_nonneg", both_t2 && gf_order && induced1_nonneg);
  b.check("inner_induced_v_order", both_t2 && induced_order);
  b.check("inner_f_inverse_order", both_t2 && induced2_nonneg && f_inv_order && fgb_nonneg);
  b.check("inner_mixed_types",
          outer_regular && i1_t1 && i2_t2 && comm2 && f_inv_order && fg_order);
  return r;
}

}  // namespace twostage
