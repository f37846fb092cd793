#include "twostage/epimodel.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"
#include "twostage/matrix_io.hpp"
#include "twostage/splitting.hpp"

namespace twostage::epi {
namespace {

struct Field {
  const char* key;
  double SaiuqrParams::*member;
};

constexpr Field kFields[] = {
    {"mu", &SaiuqrParams::mu},         {"beta", &SaiuqrParams::beta},
    {"alpha_a", &SaiuqrParams::alpha_a}, {"alpha_i", &SaiuqrParams::alpha_i},
    {"alpha_u", &SaiuqrParams::alpha_u}, {"xi_a", &SaiuqrParams::xi_a},
    {"gamma_a", &SaiuqrParams::gamma_a}, {"gamma_q", &SaiuqrParams::gamma_q},
    {"delta", &SaiuqrParams::delta},   {"eta_a", &SaiuqrParams::eta_a},
    {"eta_i", &SaiuqrParams::eta_i},   {"eta_u", &SaiuqrParams::eta_u},
    {"theta", &SaiuqrParams::theta},   {"rho_s", &SaiuqrParams::rho_s},
    {"phi", &SaiuqrParams::phi},
};

const Field* find_field(std::string_view key) {
  for (const Field& f : kFields)
    if (key == f.key) return &f;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::size_t line) {
  const std::string s(trim(text));
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

double parse_value(std::string_view text, std::size_t line) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text, line);
  const double den = parse_real(text.substr(slash + 1), line);
  if (den == 0.0) throw ParseError("line " + std::to_string(line) + ": division by zero");
  return parse_real(text.substr(0, slash), line) / den;
}

}  // namespace

SaiuqrParams SaiuqrParams::reference() {
  SaiuqrParams p;
  p.mu = 1200.0;
  p.beta = 1.10;
  p.alpha_a = 0.264;
  p.alpha_i = 0.76;
  p.alpha_u = 0.96;
  p.xi_a = 0.07151;
  p.gamma_a = 0.0012;
  p.gamma_q = 0.0015;
  p.delta = 0.03;
  p.eta_a = 1.0 / 7.48;
  p.eta_i = 1.0 / 7.0;
  p.eta_u = 1.0 / 7.0;
  p.theta = 0.8;
  p.rho_s = 0.5;
  p.phi = 0.07;
  return p;
}

SaiuqrParams SaiuqrParams::with_phi(double value) const {
  SaiuqrParams p = *this;
  p.phi = value;
  return p;
}

SaiuqrParams SaiuqrParams::with_beta(double value) const {
  SaiuqrParams p = *this;
  p.beta = value;
  return p;
}

void SaiuqrParams::validate() const {
  for (const Field& f : kFields) {
    const double v = this->*f.member;
    if (!std::isfinite(v)) throw InvalidParams(std::string(f.key) + " is not finite");
    if (v < 0.0) throw InvalidParams(std::string(f.key) + " must be nonnegative");
  }
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidParams("theta must lie in (0, 1)");
  if (rho_s > 1.0) throw InvalidParams("rho_s must lie in [0, 1]");
}

const std::vector<std::string>& SaiuqrParams::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const Field& f : kFields) out.emplace_back(f.key);
    return out;
  }();
  return k;
}

double& SaiuqrParams::at(std::string_view key) {
  const Field* f = find_field(key);
  if (f == nullptr) throw InvalidParams("unknown parameter '" + std::string(key) + "'");
  return this->*f->member;
}

double SaiuqrParams::at(std::string_view key) const {
  return const_cast<SaiuqrParams*>(this)->at(key);
}

SaiuqrParams parse_params(std::string_view text) {
  SaiuqrParams p;
  std::map<std::string, bool> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
      }
      const std::string key(trim(line.substr(0, eq)));
      const Field* f = find_field(key);
      if (f == nullptr) {
        throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
      if (seen[key]) {
        throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      }
      seen[key] = true;
      p.*f->member = parse_value(line.substr(eq + 1), line_no);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  for (const Field& f : kFields) {
    if (!seen[f.key]) throw ParseError(std::string("missing key '") + f.key + "'");
  }
  p.validate();
  return p;
}

SaiuqrParams read_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_params(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_params(const SaiuqrParams& p) {
  std::string out;
  for (const Field& f : kFields) out += std::string(f.key) + "=" + format_double(p.*f.member) + "\n";
  return out;
}

DenseMatrix build_transition(const SaiuqrParams& p) {
  p.validate();
  DenseMatrix a(4, 4);
  a(0, 0) = p.xi_a + p.gamma_a + p.eta_a + p.delta;
  a(0, 3) = -p.phi;
  a(1, 0) = -p.theta * p.gamma_a;
  a(1, 1) = p.eta_i + p.delta;
  a(1, 3) = -(1.0 - p.rho_s) * p.gamma_q;
  a(2, 0) = -(1.0 - p.theta) * p.gamma_a;
  a(2, 2) = p.eta_u + p.delta;
  a(3, 0) = -p.xi_a;
  a(3, 3) = p.gamma_q + p.delta;
  return a;
}

DenseMatrix build_infection(const SaiuqrParams& p) {
  p.validate();
  DenseMatrix b(4, 4);
  b(0, 0) = p.beta * p.alpha_a;
  b(0, 1) = p.beta * p.alpha_i;
  b(0, 2) = p.beta * p.alpha_u;
  return b;
}

void AgeStructure::validate() const {
  if (populations.empty()) throw InvalidParams("age structure needs at least one group");
  if (contact.rows() != populations.size() || contact.cols() != populations.size()) {
    throw DimensionMismatch("contact matrix must be M x M for M population groups");
  }
  for (double n : populations) {
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidParams("group populations must be positive");
  }
  for (double c : contact.data()) {
    if (c < 0.0) throw InvalidParams("contact rates must be nonnegative");
  }
}

AgeStructure AgeStructure::same_group_only(std::size_t m) {
  return {DenseMatrix::identity(m), std::vector<double>(m, 1.0)};
}

DenseMatrix contact_coupling(const AgeStructure& age) {
  age.validate();
  const std::size_t m = age.groups();
  DenseMatrix k(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      k(i, j) = age.contact(i, j) * age.populations[i] / age.populations[j];
  return k;
}

DenseMatrix contact_matrix(const ContactComponents& c, double t) {
  const auto clamp = [t](const Control& u) { return u ? std::clamp(u(t), 0.0, 1.0) : 1.0; };
  return c.home + clamp(c.u_work) * c.work + clamp(c.u_school) * c.school +
         clamp(c.u_other) * c.other;
}

std::pair<DenseMatrix, DenseMatrix> expand_age(const DenseMatrix& a4, const DenseMatrix& b4,
                                               const AgeStructure& age) {
  if (a4.rows() != 4 || a4.cols() != 4 || b4.rows() != 4 || b4.cols() != 4) {
    throw DimensionMismatch("expand_age: expects 4x4 model matrices");
  }
  const DenseMatrix k = contact_coupling(age);
  return {kron(a4, DenseMatrix::identity(age.groups())), kron(b4, k)};
}

IncidenceFractions IncidenceFractions::from(const SaiuqrParams& p) {
  return {p.alpha_a, p.alpha_i, p.alpha_u};
}

DenseVector incidence(const SaiuqrParams& p, const AgeStructure& age,
                      const IncidenceFractions& f, const DenseVector& infected_a,
                      const DenseVector& infected_s, const DenseVector& infected_u,
                      std::optional<double> beta) {
  age.validate();
  const std::size_t m = age.groups();
  if (infected_a.size() != m || infected_s.size() != m || infected_u.size() != m) {
    throw DimensionMismatch("incidence: infective vectors must have one entry per group");
  }
  if (f.f_a < 0.0 || f.f_s < 0.0 || f.f_u < 0.0) {
    throw InvalidParams("incidence: fractions must be nonnegative");
  }
  const double b = beta.value_or(p.beta);
  DenseVector lambda(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double weighted =
          f.f_a * infected_a[j] + f.f_s * infected_s[j] + f.f_u * infected_u[j];
      sum += age.contact(i, j) * weighted / age.populations[j];
    }
    lambda[i] = b * sum;
  }
  return lambda;
}

DenseVector incidence(const SaiuqrParams& p, const ContactComponents& contacts, double t,
                      const std::vector<double>& populations, const IncidenceFractions& f,
                      const DenseVector& infected_a, const DenseVector& infected_s,
                      const DenseVector& infected_u) {
  return incidence(p, AgeStructure{contact_matrix(contacts, t), populations}, f, infected_a,
                   infected_s, infected_u);
}

NgmResult compute_ngm(const SaiuqrParams& p, const std::optional<AgeStructure>& age,
                      const NgmMethod& method) {
  NgmResult r;
  r.transition = build_transition(p);
  r.infection = build_infection(p);
  if (age) std::tie(r.transition, r.infection) = expand_age(r.transition, r.infection, *age);
  const std::size_t n = r.transition.rows();

  if (method.kind == NgmMethod::Kind::Direct) {
    r.transition_inverse = inverse(r.transition);
    r.ngm = r.infection * r.transition_inverse;
    r.r0 = spectral_radius(r.ngm);
    return r;
  }

  const Splitting outer = jacobi_splitting(r.transition);
  const SolveResult x = run_stationary(r.transition, r.infection, outer, method.config);
  if (!x.report.converged) {
    throw MaxIterations("two-stage solve of the transition system did not converge");
  }
  const SolveResult inv =
      run_stationary(r.transition, DenseMatrix::identity(n), outer, method.config);
  if (!inv.report.converged) {
    throw MaxIterations("two-stage inversion of the transition matrix did not converge");
  }
  r.transition_inverse = inv.x;
  r.ngm = r.infection * r.transition_inverse;
  r.r0 = spectral_radius(x.x);
  r.solve_report = x.report;
  return r;
}

}  // namespace twostage::epi
