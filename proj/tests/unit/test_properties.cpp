#include <gtest/gtest.h>

#include <iostream>

#include "properties.hpp"

namespace {

constexpr int kTrials = 200;

void expect_outcome(const std::string& label, const props::Outcome& o, int min_applicable) {
  std::cout << "[property] " << label << ": trials=" << o.trials << " applicable=" << o.applicable
            << " failures=" << o.failures << " worst=" << o.worst << '\n';
  EXPECT_EQ(o.failures, 0) << label << (o.notes.empty() ? "" : ": " + o.notes.front());
  EXPECT_GE(o.applicable, min_applicable) << label << " is rarely exercised";
}

}  // namespace

TEST(Property, SimilarOperatorsOnCommutingInstances) {
  const auto r = props::similarity(0xC0FFEE, kTrials);
  expect_outcome("radius", r.radius, kTrials);
  expect_outcome("similarity", r.similarity, kTrials);
}

TEST(Property, ClosedFormMatchesSeries) {
  expect_outcome("closed form", props::closed_form(0xBEEF, kTrials), kTrials);
}

TEST(Property, WeakRegularSplittingsConverge) {
  expect_outcome("weak regular", props::weak_regular_convergence(0xFACE, 2 * kTrials), kTrials);
}

TEST(Property, InducedSplitting) {
  const auto r = props::induced(0xD1CE, 2 * kTrials);
  expect_outcome("induced routes", r.routes, kTrials);
  expect_outcome("induced type II", r.type2, kTrials);
  expect_outcome("induced regular", r.regular, 20);
}

TEST(Property, OneStageComparisons) {
  for (const auto& [name, o] : props::comparisons(0xABCD, 3 * kTrials)) expect_outcome(name, o, 20);
}

TEST(Property, InnerComparisons) {
  for (const auto& [name, o] : props::inner_comparisons(0x1234, 3 * kTrials)) expect_outcome(name, o, 20);
}
