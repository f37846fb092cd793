#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Randomized property suites shared by the unit tests and the acceptance
// runner. Each returns counts rather than asserting so callers decide how to
// report.
namespace props {

struct Outcome {
  int trials = 0;
  int applicable = 0;  // trials on which the claim was binding
  int failures = 0;
  double worst = 0.0;  // largest observed discrepancy
  std::vector<std::string> notes;  // first few failure descriptions

  void fail(const std::string& what);
  bool passed(int min_applicable) const { return failures == 0 && applicable >= min_applicable; }
};

/// rho(T_s) vs rho(That_s) and A T_s A^{-1} vs That_s on commuting instances.
struct SimilarityOutcome {
  Outcome radius;
  Outcome similarity;
};
SimilarityOutcome similarity(std::uint64_t seed, int trials);

/// Series and closed-form T_s for s = 1..10.
Outcome closed_form(std::uint64_t seed, int trials);

/// Weak regular splittings (either type) of K-monotone matrices converge.
Outcome weak_regular_convergence(std::uint64_t seed, int trials);

/// Induced splitting: both routes to B agree, type II; regular when
/// G >=_K G F^{-1} G.
struct InducedOutcome {
  Outcome routes;
  Outcome type2;
  Outcome regular;
};
InducedOutcome induced(std::uint64_t seed, int trials);

/// Comparison checks keyed by check name.
std::map<std::string, Outcome> comparisons(std::uint64_t seed, int trials);
std::map<std::string, Outcome> inner_comparisons(std::uint64_t seed, int trials);

}  // namespace props
