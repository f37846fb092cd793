#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twostage/cone.hpp"
#include "twostage/splitting.hpp"

namespace twostage {

/// One conditional ordering claim rho1 <= rho2 < 1.
struct TheoremCheck {
  std::string name;
  bool hypotheses_hold = false;
  /// Evaluated in every case; only binding when hypotheses_hold.
  bool prediction_holds = false;
  bool violated() const noexcept { return hypotheses_hold && !prediction_holds; }
};

struct ComparisonReport {
  static constexpr double kSlack = 1e-9;

  double rho1 = 0.0;
  double rho2 = 0.0;
  /// Named hypothesis flags in evaluation order.
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<TheoremCheck> checks;

  bool hypothesis(const std::string& name) const;
  bool any_applicable() const;
  bool any_violation() const;
};

/// Orders two one-stage splittings of the same K-monotone A.
///
/// Checks:
///  - "type2_v_order": both weak type II and V2 >=_K V1
///  - "mixed_types_u_inverse_order": one weak type I, the other weak type II,
///    U1^{-1} >=_K U2^{-1}
///  - "type2_u_order": both weak type II and U2 >=_K U1 >=_K 0
///
/// Throws MismatchedA if the splittings disagree on A and NotMonotone if
/// A^{-1} is not K-nonnegative.
ComparisonReport compare_splittings(const Splitting& s1, const Splitting& s2,
                                    const SimplicialCone& k);

/// Orders two-stage operators built from one outer splitting and two inner
/// splittings U = F - G = Fbar - Gbar, with the same inner count s.
/// rho1 = rho(T_s), rho2 = rho(Tbar_s).
///
/// Checks (all require a K-regular outer splitting):
///  - "inner_u_nonneg_gf_order": both inner weak type II and commuting,
///    U >=_K 0, Gbar Fbar^{-1} >=_K G F^{-1}
///  - "inner_g_dominance_gf_order": as above with G >=_K G F^{-1} G in place
///    of U >=_K 0
///  - "inner_gf_order_induced_nonneg": both type II commuting,
///    Gbar Fbar^{-1} >=_K G F^{-1} and That_s P_s >=_K 0
///  - "inner_induced_v_order": both type II commuting,
///    Tbarhat_s Pbar_s >=_K That_s P_s
///  - "inner_f_inverse_order": both type II commuting, Tbarhat_s Pbar_s >=_K 0,
///    F^{-1} >=_K Fbar^{-1}, Fbar^{-1} Gbar >=_K 0
///  - "inner_mixed_types": inner1 weak type I, inner2 weak type II and
///    commuting, F^{-1} >=_K Fbar^{-1}, F^{-1} G >=_K Fbar^{-1} Gbar
ComparisonReport compare_inner_splittings(const Splitting& outer, const Splitting& inner1,
                                          const Splitting& inner2, std::size_t s,
                                          const SimplicialCone& k);

/// Throws NotMonotone unless A^{-1} >=_K 0.
void require_monotone(const DenseMatrix& a, const SimplicialCone& k);

}  // namespace twostage
