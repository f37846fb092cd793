#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twostage/dense.hpp"
#include "twostage/solver.hpp"

namespace twostage::epi {

/// Rate parameters of the SAIUQR model. Rates are per unit time.
struct SaiuqrParams {
  double mu = 0.0;       // birth rate
  double beta = 0.0;     // transmission rate
  double alpha_a = 0.0;  // adjustment factor, asymptomatic
  double alpha_i = 0.0;  // adjustment factor, reported symptomatic
  double alpha_u = 0.0;  // adjustment factor, unreported symptomatic
  double xi_a = 0.0;     // quarantine rate
  double gamma_a = 0.0;  // asymptomatic -> symptomatic
  double gamma_q = 0.0;  // quarantine release
  double delta = 0.0;    // natural mortality
  double eta_a = 0.0;    // recovery rates
  double eta_i = 0.0;
  double eta_u = 0.0;
  double theta = 0.5;    // reported fraction, in (0, 1)
  double rho_s = 0.0;    // quarantine -> susceptible fraction, in [0, 1]
  double phi = 0.0;      // return rate into the asymptomatic class

  /// Published reference set (phi = 0.07).
  static SaiuqrParams reference();

  SaiuqrParams with_phi(double value) const;
  SaiuqrParams with_beta(double value) const;

  /// Throws InvalidParams.
  void validate() const;

  /// Field names in declaration order, as used in parameter files.
  static const std::vector<std::string>& keys();
  double& at(std::string_view key);
  double at(std::string_view key) const;
};

/// key=value lines; '#' starts a comment line. Every key is required exactly
/// once and values may be written as fractions such as 1/7.48. Throws
/// ParseError for syntax problems and InvalidParams for out-of-range values.
SaiuqrParams parse_params(std::string_view text);
SaiuqrParams read_params(const std::string& path);
std::string format_params(const SaiuqrParams& p);

/// 4x4 transition matrix over (asymptomatic, reported, unreported, quarantined).
DenseMatrix build_transition(const SaiuqrParams& p);
/// 4x4 new-infection matrix; only the first row is nonzero.
DenseMatrix build_infection(const SaiuqrParams& p);

struct AgeStructure {
  DenseMatrix contact;              // C, M x M
  std::vector<double> populations;  // N_i > 0

  std::size_t groups() const noexcept { return populations.size(); }
  /// Throws DimensionMismatch, or InvalidParams for empty groups, nonpositive
  /// populations or negative contacts.
  void validate() const;
  /// M groups, C = I, N_i = 1.
  static AgeStructure same_group_only(std::size_t m);
};

/// K_ij = C_ij N_i / N_j.
DenseMatrix contact_coupling(const AgeStructure& age);

using Control = std::function<double(double)>;

struct ContactComponents {
  DenseMatrix home, work, school, other;
  Control u_work = [](double) { return 1.0; };
  Control u_school = [](double) { return 1.0; };
  Control u_other = [](double) { return 1.0; };
};

/// C^H + u^W(t) C^W + u^S(t) C^S + u^O(t) C^O with controls clamped to [0, 1].
DenseMatrix contact_matrix(const ContactComponents& c, double t);

/// (A4 kron I_M, B4 kron K).
std::pair<DenseMatrix, DenseMatrix> expand_age(const DenseMatrix& a4, const DenseMatrix& b4,
                                               const AgeStructure& age);

struct IncidenceFractions {
  double f_a = 0.0;
  double f_s = 0.0;
  double f_u = 0.0;
  /// (alpha_a, alpha_i, alpha_u).
  static IncidenceFractions from(const SaiuqrParams& p);
};

/// lambda_i = beta * sum_j f_x C_ij I^x_j / N_j summed over x in {a, s, u},
/// with C = age.contact. `beta` defaults to p.beta.
DenseVector incidence(const SaiuqrParams& p, const AgeStructure& age,
                      const IncidenceFractions& f, const DenseVector& infected_a,
                      const DenseVector& infected_s, const DenseVector& infected_u,
                      std::optional<double> beta = std::nullopt);

/// Same, with the contact matrix composed at time t.
DenseVector incidence(const SaiuqrParams& p, const ContactComponents& contacts, double t,
                      const std::vector<double>& populations, const IncidenceFractions& f,
                      const DenseVector& infected_a, const DenseVector& infected_s,
                      const DenseVector& infected_u);

struct NgmMethod {
  enum class Kind { Direct, TwoStage };
  Kind kind = Kind::Direct;
  /// Used by TwoStage: outer Jacobi on the transition matrix, inner SOR(omega).
  TwoStageConfig config;

  static NgmMethod direct() { return {}; }
  static NgmMethod two_stage(TwoStageConfig cfg) { return {Kind::TwoStage, std::move(cfg)}; }
};

struct NgmResult {
  DenseMatrix transition;
  DenseMatrix infection;
  DenseMatrix transition_inverse;
  DenseMatrix ngm;  // infection * transition^{-1}
  double r0 = 0.0;
  /// TwoStage only: the solve of transition * X = infection.
  std::optional<IterationReport> solve_report;
};

/// Throws SingularMatrix if the transition matrix is singular and
/// MaxIterations if a two-stage solve does not converge.
NgmResult compute_ngm(const SaiuqrParams& p, const std::optional<AgeStructure>& age = std::nullopt,
                      const NgmMethod& method = NgmMethod::direct());

}  // namespace twostage::epi
