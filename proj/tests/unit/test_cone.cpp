#include <gtest/gtest.h>

#include "generators.hpp"
#include "twostage/cone.hpp"
#include "twostage/errors.hpp"

using namespace twostage;

TEST(Orthant, Basics) {
  const SimplicialCone k = orthant(4);
  EXPECT_EQ(k.generators(), DenseMatrix::identity(4));
  EXPECT_TRUE(k.is_orthant());
  EXPECT_TRUE(contains_vector(orthant(2), DenseVector{1, 0}));
  EXPECT_FALSE(contains_vector(orthant(2), DenseVector{-1e-6, 0}));
}

TEST(ContainsVector, Apex) {
  EXPECT_TRUE(contains_vector(orthant(3), DenseVector{0, 0, 0}));
}

TEST(ContainsVector, SkewedCone) {
  const SimplicialCone k(DenseMatrix{{1, 1}, {0, 1}});
  EXPECT_TRUE(k.contains_vector(DenseVector{1, 1}));
  EXPECT_FALSE(k.contains_vector(DenseVector{0, -1}));
}

TEST(ContainsVectorInterior, BoundaryExcluded) {
  EXPECT_TRUE(contains_vector_interior(orthant(2), DenseVector{1, 1}));
  EXPECT_FALSE(contains_vector_interior(orthant(2), DenseVector{1, 0}));
  EXPECT_TRUE(SimplicialCone(DenseMatrix{{2, 0}, {0, 1}}).contains_vector_interior(DenseVector{2, 1}));
}

TEST(LeavesInvariant, Orthant) {
  gen::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_TRUE(leaves_invariant(orthant(4), gen::nonneg(rng, 4, 0, 1, 0.5)));
  }
  EXPECT_FALSE(leaves_invariant(orthant(2), -1.0 * DenseMatrix::identity(2)));
  EXPECT_FALSE(leaves_invariant(orthant(2), DenseMatrix{{0, -1}, {1, 0}}));
}

TEST(LeavesInvariant, ConjugatedNonnegativeMatrix) {
  gen::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix p = gen::cone_generators(rng, 4);
    const DenseMatrix n = gen::nonneg(rng, 4, 0, 1, 0.5);
    const SimplicialCone k(p);
    EXPECT_TRUE(k.leaves_invariant(gen::conjugate(p, n), magnitude_scale({&n})));
  }
}

TEST(ConeLe, ReflexiveAndZero) {
  gen::Rng rng(3);
  const DenseMatrix b = gen::nonneg(rng, 3, 0, 1);
  EXPECT_TRUE(cone_le(orthant(3), DenseMatrix::zeros(3, 3), b));
  EXPECT_TRUE(cone_le(orthant(3), b, b));
}

TEST(ConeLe, TransitiveOnNonnegativeChains) {
  gen::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseMatrix p = gen::cone_generators(rng, 3);
    const SimplicialCone k(p);
    DenseMatrix a(3, 3);
    for (auto& v : a.data()) v = gen::uniform(rng, -1, 1);
    const DenseMatrix b = a + gen::conjugate(p, gen::nonneg(rng, 3, 0, 1, 0.6));
    const DenseMatrix c = b + gen::conjugate(p, gen::nonneg(rng, 3, 0, 1, 0.6));
    ASSERT_TRUE(k.le(a, b) && k.le(b, c));
    EXPECT_TRUE(k.le(a, c));
  }
}

TEST(SimplicialCone, SingularGeneratorsRejected) {
  EXPECT_THROW(SimplicialCone(DenseMatrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST(SimplicialCone, DimensionChecked) {
  EXPECT_THROW(orthant(2).contains_vector(DenseVector{1, 2, 3}), DimensionMismatch);
}

TEST(SimplicialCone, CoordinatesRoundTrip) {
  gen::Rng rng(5);
  const DenseMatrix p = gen::cone_generators(rng, 4);
  const SimplicialCone k(p);
  const DenseMatrix a = gen::nonneg(rng, 4, -1, 1);
  EXPECT_LT(max_abs_diff(k.from_coordinates(k.coordinates(a)), a), 1e-12);
}
