#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "twostage/epimodel.hpp"
#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"

using namespace twostage;
using namespace twostage::epi;

namespace {

SaiuqrParams zero_rates() {
  SaiuqrParams p;
  for (const auto& k : SaiuqrParams::keys()) p.at(k) = 0.0;
  p.theta = 0.5;
  return p;
}

}  // namespace

TEST(Transition, PublishedEntries) {
  const DenseMatrix a = build_transition(SaiuqrParams::reference().with_phi(0.10));
  EXPECT_NEAR(a(0, 0), 0.23639984, 5e-9);
  EXPECT_NEAR(a(3, 3), 0.0315, 5e-9);
  EXPECT_NEAR(a(1, 3), -0.00075, 5e-9);
  EXPECT_DOUBLE_EQ(a(0, 3), -0.10);
}

TEST(Transition, PureMortalityIsIdentity) {
  SaiuqrParams p = zero_rates();
  p.delta = 1.0;
  EXPECT_EQ(build_transition(p), DenseMatrix::identity(4));
}

// Leading principal minors positive, via elimination without pivoting.
bool leading_minors_positive(DenseMatrix a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a(k, k) > 0.0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

TEST(Transition, ZMatrixAndMMatrixExactlyWhenMinorsPositive) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int m_matrices = 0;
  for (int trial = 0; trial < 200; ++trial) {
    SaiuqrParams p = SaiuqrParams::reference();
    for (const auto& k : SaiuqrParams::keys()) p.at(k) *= 0.2 + 1.6 * u(rng);
    p.theta = 0.05 + 0.9 * u(rng);
    p.rho_s = u(rng);
    const DenseMatrix a = build_transition(p);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) EXPECT_LE(a(i, j), 0.0);
    const bool minors = leading_minors_positive(a);
    m_matrices += minors;
    EXPECT_EQ(oracle::entrywise_ge(oracle::inverse(a), DenseMatrix(4, 4), 0.0), minors)
        << "trial " << trial;
  }
  EXPECT_GT(m_matrices, 50);
}

TEST(Infection, PublishedFirstRow) {
  const DenseMatrix b = build_infection(SaiuqrParams::reference());
  EXPECT_NEAR(b(0, 0), 0.2904, 5e-13);
  EXPECT_NEAR(b(0, 1), 0.836, 5e-13);
  EXPECT_NEAR(b(0, 2), 1.056, 5e-13);
  EXPECT_EQ(b(0, 3), 0.0);
}

TEST(Infection, ZeroTransmission) {
  EXPECT_EQ(build_infection(SaiuqrParams::reference().with_beta(0.0)), DenseMatrix::zeros(4, 4));
}

TEST(Infection, RankOne) {
  const DenseMatrix b = build_infection(SaiuqrParams::reference());
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(b(i, j), 0.0);
}

TEST(Params, ValidateRejectsBadValues) {
  EXPECT_THROW(SaiuqrParams::reference().with_phi(-0.1).validate(), InvalidParams);
  SaiuqrParams p = SaiuqrParams::reference();
  p.theta = 1.0;
  EXPECT_THROW(p.validate(), InvalidParams);
  p = SaiuqrParams::reference();
  p.rho_s = 1.5;
  EXPECT_THROW(p.validate(), InvalidParams);
}

TEST(Params, FileMatchesReference) {
  const SaiuqrParams file = read_params(std::string(TWOSTAGE_DATA_DIR) + "/saiuqr_reference.params");
  const SaiuqrParams ref = SaiuqrParams::reference();
  for (const auto& k : SaiuqrParams::keys()) EXPECT_DOUBLE_EQ(file.at(k), ref.at(k)) << k;
}

TEST(Params, FormatParseRoundTrip) {
  const SaiuqrParams p = SaiuqrParams::reference().with_phi(0.0912345678901234);
  const SaiuqrParams q = parse_params(format_params(p));
  for (const auto& k : SaiuqrParams::keys()) EXPECT_EQ(p.at(k), q.at(k)) << k;
}

TEST(Params, ParseErrors) {
  std::string text = format_params(SaiuqrParams::reference());
  EXPECT_THROW(parse_params(text + "phi = 0.1\n"), ParseError);
  EXPECT_THROW(parse_params(text + "bogus = 1\n"), ParseError);
  EXPECT_THROW(parse_params("mu = 1\n"), ParseError);
  EXPECT_THROW(parse_params(text.replace(text.find("phi"), 3, "phi = x #")), ParseError);
}

TEST(Params, FractionValues) {
  std::string text = format_params(SaiuqrParams::reference());
  const auto pos = text.find("eta_i");
  const auto end = text.find('\n', pos);
  text.replace(pos, end - pos, "eta_i = 1/7");
  EXPECT_DOUBLE_EQ(parse_params(text).eta_i, 1.0 / 7.0);
}

TEST(ContactMatrix, AllControlsOn) {
  ContactComponents c{DenseMatrix{{1}}, DenseMatrix{{2}}, DenseMatrix{{3}}, DenseMatrix{{4}}};
  EXPECT_DOUBLE_EQ(contact_matrix(c, 0.0)(0, 0), 10.0);
}

TEST(ContactMatrix, LockdownLeavesHome) {
  ContactComponents c{DenseMatrix{{1}}, DenseMatrix{{2}}, DenseMatrix{{3}}, DenseMatrix{{4}}};
  c.u_work = c.u_school = c.u_other = [](double) { return 0.0; };
  EXPECT_DOUBLE_EQ(contact_matrix(c, 5.0)(0, 0), 1.0);
}

TEST(ContactMatrix, PartialWork) {
  ContactComponents c{DenseMatrix{{1}}, DenseMatrix{{2}}, DenseMatrix{{3}}, DenseMatrix{{4}}};
  c.u_work = [](double) { return 0.5; };
  EXPECT_DOUBLE_EQ(contact_matrix(c, 0.0)(0, 0), 1 + 0.5 * 2 + 3 + 4);
}

TEST(ContactMatrix, ControlsClamped) {
  ContactComponents c{DenseMatrix{{1}}, DenseMatrix{{2}}, DenseMatrix{{3}}, DenseMatrix{{4}}};
  c.u_work = [](double) { return 3.0; };
  c.u_other = [](double) { return -1.0; };
  EXPECT_DOUBLE_EQ(contact_matrix(c, 0.0)(0, 0), 1 + 2 + 3);
}

TEST(ExpandAge, SixteenGroups) {
  const auto p = SaiuqrParams::reference();
  const auto [a, b] = expand_age(build_transition(p), build_infection(p), AgeStructure::same_group_only(16));
  EXPECT_EQ(a.rows(), 64u);
  EXPECT_EQ(b.cols(), 64u);
}

TEST(ExpandAge, SameGroupContactKeepsR0) {
  const auto p = SaiuqrParams::reference();
  const auto [a, b] = expand_age(build_transition(p), build_infection(p), AgeStructure::same_group_only(16));
  EXPECT_EQ(b, kron(build_infection(p), DenseMatrix::identity(16)));
  const double big = oracle::spectral_radius(oracle::multiply(b, oracle::inverse(a)));
  EXPECT_NEAR(big, compute_ngm(p).r0, 1e-9);
}

TEST(ExpandAge, SingleGroupIsUnchanged) {
  const auto p = SaiuqrParams::reference();
  const AgeStructure one{DenseMatrix{{1}}, {5000.0}};
  EXPECT_EQ(contact_coupling(one), DenseMatrix{{1}});
  const auto [a, b] = expand_age(build_transition(p), build_infection(p), one);
  EXPECT_EQ(a, build_transition(p));
  EXPECT_EQ(b, build_infection(p));
}

TEST(ContactCoupling, PopulationRatios) {
  const AgeStructure age{DenseMatrix{{1, 2}, {3, 4}}, {10.0, 20.0}};
  const DenseMatrix k = contact_coupling(age);
  EXPECT_DOUBLE_EQ(k(0, 1), 2 * 10.0 / 20.0);
  EXPECT_DOUBLE_EQ(k(1, 0), 3 * 20.0 / 10.0);
}

TEST(AgeStructure, Validation) {
  EXPECT_THROW((AgeStructure{DenseMatrix{{1, 0}, {0, 1}}, {1.0}}.validate()), DimensionMismatch);
  EXPECT_THROW((AgeStructure{DenseMatrix{{1}}, {0.0}}.validate()), InvalidParams);
  EXPECT_THROW((AgeStructure{DenseMatrix{{-1}}, {1.0}}.validate()), InvalidParams);
}

TEST(Incidence, NoInfectives) {
  const auto p = SaiuqrParams::reference();
  const AgeStructure age = AgeStructure::same_group_only(3);
  const DenseVector z(3);
  EXPECT_EQ(incidence(p, age, IncidenceFractions::from(p), z, z, z), DenseVector(3));
}

TEST(Incidence, ScalarForm) {
  const auto p = SaiuqrParams::reference();
  const AgeStructure age{DenseMatrix{{1}}, {1.0}};
  const IncidenceFractions f = IncidenceFractions::from(p);
  const DenseVector lam = incidence(p, age, f, DenseVector{3}, DenseVector{5}, DenseVector{7});
  EXPECT_NEAR(lam[0], p.beta * (p.alpha_a * 3 + p.alpha_i * 5 + p.alpha_u * 7), 1e-12);
}

TEST(Incidence, Linear) {
  const auto p = SaiuqrParams::reference();
  const AgeStructure age{DenseMatrix{{1, 0.5}, {0.25, 2}}, {100.0, 300.0}};
  const IncidenceFractions f = IncidenceFractions::from(p);
  const DenseVector ia{1, 2}, is{3, 4}, iu{5, 6};
  const DenseVector one = incidence(p, age, f, ia, is, iu);
  const DenseVector two = incidence(p, age, f, 2.0 * ia, 2.0 * is, 2.0 * iu);
  EXPECT_LT(max_abs_diff(two, 2.0 * one), 1e-14);
}

TEST(ComputeNgm, PublishedR0) {
  EXPECT_NEAR(compute_ngm(SaiuqrParams::reference()).r0, 3.9327471467109305, 1e-9);
}

TEST(ComputeNgm, AgreesWithOracle) {
  // The printed NGM row is inconsistent with the printed matrices at every phi;
  // the independent product is the reference here.
  for (double phi : {0.07, 0.10}) {
    const auto p = SaiuqrParams::reference().with_phi(phi);
    const NgmResult r = compute_ngm(p);
    const DenseMatrix want = oracle::multiply(build_infection(p), oracle::inverse(build_transition(p)));
    EXPECT_LT(max_abs_diff(r.ngm, want), 1e-10 * max_abs(want));
    EXPECT_NEAR(r.r0, oracle::spectral_radius(want), 1e-9 * r.r0);
  }
}

TEST(ComputeNgm, ZeroTransmission) {
  EXPECT_EQ(compute_ngm(SaiuqrParams::reference().with_beta(0.0)).r0, 0.0);
}

TEST(ComputeNgm, TwoStageAgreesWithDirect) {
  TwoStageConfig cfg;
  cfg.omega = 1.7;
  cfg.schedule = {2};
  const auto p = SaiuqrParams::reference();
  const NgmResult r = compute_ngm(p, std::nullopt, NgmMethod::two_stage(cfg));
  ASSERT_TRUE(r.solve_report.has_value());
  EXPECT_TRUE(r.solve_report->converged);
  EXPECT_NEAR(r.r0, compute_ngm(p).r0, 1e-6);
}

TEST(ComputeNgm, TwoStageCapRaises) {
  TwoStageConfig cfg;
  cfg.max_outer = 2;
  EXPECT_THROW(compute_ngm(SaiuqrParams::reference(), std::nullopt, NgmMethod::two_stage(cfg)),
               MaxIterations);
}
