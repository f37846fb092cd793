#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

#include "twostage/comparison.hpp"
#include "twostage/cone.hpp"
#include "twostage/errors.hpp"
#include "twostage/linalg.hpp"
#include "twostage/matrix_io.hpp"
#include "twostage/monotone.hpp"
#include "twostage/solver.hpp"
#include "twostage/splitting.hpp"

namespace twostage::cli {
namespace {

using nlohmann::json;

enum class Format { Json, Csv };

// Maps SingularMatrix to the code appropriate for what was being factored.
enum class SingularMeaning { SplittingU, Transition };

struct Context {
  std::ostream& out;
  std::ostream& err;
};

json to_json(const DenseVector& v) { return json(v.values()); }

json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  return rows;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

SimplicialCone load_cone(const std::string& source, std::size_t n) {
  if (source == "orthant") return SimplicialCone::orthant(n);
  return SimplicialCone(read_matrix_csv(source));
}

std::vector<double> load_populations(const std::string& path) {
  const DenseMatrix m = read_matrix_csv(path);
  return {m.data().begin(), m.data().end()};
}

std::vector<std::size_t> parse_schedule(const std::string& text) {
  std::vector<std::size_t> out;
  const DenseVector counts = parse_vector_list(text);
  for (double v : counts.values()) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw InvalidConfig("expected positive integers, got '" + text + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Splitting make_outer(const std::string& kind, const DenseMatrix& a, double omega) {
  if (kind == "jacobi") return jacobi_splitting(a);
  if (kind == "gauss-seidel") return gauss_seidel_splitting(a);
  if (kind == "sor") return sor_splitting(a, omega);
  throw InvalidConfig("unknown outer splitting '" + kind + "'");
}

Format resolve(const std::string& text, Format fallback) {
  if (text.empty()) return fallback;
  return text == "csv" ? Format::Csv : Format::Json;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string a, u, v, cone = "orthant", format;
};

int cmd_classify(const ClassifyArgs& args, Context ctx) {
  const DenseMatrix a = read_matrix_csv(args.a);
  const Splitting s(a, read_matrix_csv(args.u), read_matrix_csv(args.v));
  const SimplicialCone k = load_cone(args.cone, a.rows());
  const SplittingClass c = classify(s, k);
  const ConvergenceCheck conv = check_convergence(s);
  if (resolve(args.format, Format::Json) == Format::Json) {
    ctx.out << json{{"regular", c.regular},
                    {"weak_type1", c.weak_type1},
                    {"weak_type2", c.weak_type2},
                    {"rho", conv.rho},
                    {"convergent", conv.convergent}}
                   .dump()
            << '\n';
  } else {
    write_csv_row(ctx.out, {"regular", "weak_type1", "weak_type2", "rho", "convergent"});
    write_csv_row(ctx.out, {csv_bool(c.regular), csv_bool(c.weak_type1), csv_bool(c.weak_type2),
                            format_double(conv.rho), csv_bool(conv.convergent)});
  }
  return kOk;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string a, b, outer = "jacobi", schedule = "2", x0, format;
  double outer_omega = 1.0, omega = 1.0, eps = 1e-8;
  std::size_t max_outer = 100000;
  bool one_stage = false;
};

int cmd_solve(const SolveArgs& args, Context ctx) {
  const DenseMatrix a = read_matrix_csv(args.a);
  const DenseMatrix b = read_matrix_csv(args.b);
  const Splitting outer = make_outer(args.outer, a, args.outer_omega);
  TwoStageConfig cfg;
  cfg.schedule = parse_schedule(args.schedule);
  cfg.omega = args.omega;
  cfg.eps = args.eps;
  cfg.max_outer = args.max_outer;
  cfg.report_spectral_radius = true;
  if (!args.x0.empty()) cfg.initial = read_matrix_csv(args.x0);
  const SolveResult r = args.one_stage ? run_one_stage(a, b, outer, cfg)
                                       : run_nonstationary(a, b, outer, cfg);
  if (resolve(args.format, Format::Json) == Format::Json) {
    json j{{"converged", r.report.converged},
           {"outer_iterations", r.report.outer_iterations},
           {"final_update_norm", r.report.final_update_norm},
           {"residual_norm", r.report.residual_norm},
           {"x", to_json(r.x)}};
    if (r.report.spectral_radius_T) j["rho_T"] = *r.report.spectral_radius_T;
    ctx.out << j.dump() << '\n';
  } else {
    write_matrix_csv(ctx.out, r.x);
  }
  return r.report.converged ? kOk : kNoConvergence;
}

// --------------------------------------------------------------------- ngm

struct ModelArgs {
  std::string params, contact, populations;
  std::optional<double> phi;

  epi::SaiuqrParams load() const {
    epi::SaiuqrParams p = params.empty() ? epi::SaiuqrParams::reference() : epi::read_params(params);
    if (phi) p = p.with_phi(*phi);
    p.validate();
    return p;
  }

  std::optional<epi::AgeStructure> age() const {
    if (contact.empty()) {
      if (!populations.empty()) throw InvalidConfig("--populations requires --contact");
      return std::nullopt;
    }
    epi::AgeStructure a{read_matrix_csv(contact), {}};
    a.populations = populations.empty() ? std::vector<double>(a.contact.rows(), 1.0)
                                        : load_populations(populations);
    a.validate();
    return a;
  }
};

struct NgmArgs {
  ModelArgs model;
  std::string method = "direct", format;
  double omega = 1.0, eps = 1e-8;
  std::size_t s = 2, max_outer = 100000;
};

int cmd_ngm(const NgmArgs& args, Context ctx) {
  const epi::SaiuqrParams p = args.model.load();
  epi::NgmMethod method;
  if (args.method == "twostage") {
    TwoStageConfig cfg;
    cfg.schedule = {args.s};
    cfg.omega = args.omega;
    cfg.eps = args.eps;
    cfg.max_outer = args.max_outer;
    method = epi::NgmMethod::two_stage(cfg);
  } else if (args.method != "direct") {
    throw InvalidConfig("--method must be direct or twostage");
  }
  const epi::NgmResult r = epi::compute_ngm(p, args.model.age(), method);
  double checksum = 0.0;
  for (double v : r.transition_inverse.data()) checksum += v;
  const auto first = r.ngm.row(0);
  const std::vector<double> first_row(first.begin(), first.end());

  if (resolve(args.format, Format::Json) == Format::Json) {
    json j{{"r0", r.r0},
           {"ngm_first_row", first_row},
           {"a_inverse_checksum", checksum},
           {"method", args.method},
           {"size", r.transition.rows()}};
    if (r.solve_report) {
      j["outer_iterations"] = r.solve_report->outer_iterations;
      j["converged"] = r.solve_report->converged;
    }
    ctx.out << j.dump() << '\n';
  } else {
    std::vector<std::string> header{"r0", "a_inverse_checksum"};
    std::vector<std::string> row{format_double(r.r0), format_double(checksum)};
    for (std::size_t i = 0; i < first_row.size(); ++i) {
      header.push_back("ngm_1_" + std::to_string(i + 1));
      row.push_back(format_double(first_row[i]));
    }
    write_csv_row(ctx.out, header);
    write_csv_row(ctx.out, row);
  }
  return kOk;
}

// ------------------------------------------------------------------ table1

struct Table1Args {
  ModelArgs model;
  std::string phis = "0.07,0.08,0.09,0.10", sizes = "4,64", omegas = "1,1.7", schedule = "1",
              outer = "gauss-seidel", format;
  double eps = 1e-8;
  std::size_t max_outer = 100000;
};

int cmd_table1(const Table1Args& args, Context ctx) {
  const epi::SaiuqrParams p = args.model.load();
  Table1Options opts;
  opts.phis = parse_vector_list(args.phis).values();
  opts.sizes.clear();
  for (std::size_t s : parse_schedule(args.sizes)) opts.sizes.push_back(s);
  const std::vector<double> omegas = parse_vector_list(args.omegas).values();
  if (omegas.size() != 2) throw InvalidConfig("--omegas takes exactly two values");
  opts.omega_low = omegas[0];
  opts.omega_high = omegas[1];
  opts.schedule = parse_schedule(args.schedule);
  opts.outer = args.outer;
  opts.eps = args.eps;
  opts.max_outer = args.max_outer;
  opts.age = args.model.age();

  const std::vector<SweepRow> rows = table1_rows(p, opts);
  bool all_converged = true;
  if (resolve(args.format, Format::Csv) == Format::Csv) {
    write_csv_row(ctx.out, {"size", "phi", "one_stage_iters", "two_stage_w1_iters",
                            "two_stage_w17_iters", "kappa2", "rho_T_w1", "rho_T_w17",
                            "converged"});
    for (const SweepRow& r : rows) {
      write_csv_row(ctx.out, {std::to_string(r.size), format_double(r.phi),
                              std::to_string(r.one_stage_iters), std::to_string(r.two_stage_w1_iters),
                              std::to_string(r.two_stage_w17_iters), format_double(r.kappa2),
                              format_double(r.rho_T_w1), format_double(r.rho_T_w17),
                              csv_bool(r.converged)});
      all_converged = all_converged && r.converged;
    }
  } else {
    json arr = json::array();
    for (const SweepRow& r : rows) {
      arr.push_back({{"size", r.size},
                     {"phi", r.phi},
                     {"one_stage_iters", r.one_stage_iters},
                     {"two_stage_w1_iters", r.two_stage_w1_iters},
                     {"two_stage_w17_iters", r.two_stage_w17_iters},
                     {"kappa2", r.kappa2},
                     {"rho_T_w1", r.rho_T_w1},
                     {"rho_T_w17", r.rho_T_w17},
                     {"converged", r.converged}});
      all_converged = all_converged && r.converged;
    }
    ctx.out << json{{"rows", arr}}.dump() << '\n';
  }
  return all_converged ? kOk : kNoConvergence;
}

// ---------------------------------------------------------------- monotone

struct MonotoneArgs {
  ModelArgs model;
  std::string x0, y0, schedule = "2", format;
  double omega = 1.0, eps = 1e-10;
  std::size_t column = 1, max_outer = 100000;
};

int cmd_monotone(const MonotoneArgs& args, Context ctx) {
  const epi::SaiuqrParams p = args.model.load();
  DenseMatrix a = epi::build_transition(p);
  DenseMatrix bm = epi::build_infection(p);
  if (auto age = args.model.age()) std::tie(a, bm) = epi::expand_age(a, bm, *age);
  if (args.column < 1 || args.column > bm.cols()) throw InvalidConfig("--column out of range");
  const DenseVector b = bm.column(args.column - 1);

  TwoStageConfig cfg;
  cfg.schedule = parse_schedule(args.schedule);
  cfg.omega = args.omega;
  cfg.eps = args.eps;
  cfg.max_outer = args.max_outer;
  cfg.validate();
  const Splitting outer = jacobi_splitting(a);
  const Splitting inner = sor_splitting(outer.U(), cfg.omega);
  const SimplicialCone k = SimplicialCone::orthant(a.rows());

  if (args.x0.empty() != args.y0.empty()) throw InvalidConfig("give both --x0 and --y0 or neither");
  DenseVector x0, y0;
  if (args.x0.empty()) {
    std::tie(x0, y0) = bracketing_initials(outer, inner, cfg.schedule.front(), b, k);
  } else {
    x0 = parse_vector_list(args.x0);
    y0 = parse_vector_list(args.y0);
  }
  const MonotoneRun run = monotone_bracket(a, b, x0, y0, outer, inner, cfg, k);

  if (resolve(args.format, Format::Csv) == Format::Csv) {
    std::vector<std::string> header{"k"};
    for (std::size_t i = 0; i < a.rows(); ++i) header.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = 0; i < a.rows(); ++i) header.push_back("y" + std::to_string(i + 1));
    write_csv_row(ctx.out, header);
    for (std::size_t it = 0; it < run.xs.size(); ++it) {
      std::vector<std::string> row{std::to_string(it)};
      for (double v : run.xs[it].values()) row.push_back(format_double(v));
      for (double v : run.ys[it].values()) row.push_back(format_double(v));
      write_csv_row(ctx.out, row);
    }
  } else {
    json xs = json::array(), ys = json::array();
    for (const auto& v : run.xs) xs.push_back(to_json(v));
    for (const auto& v : run.ys) ys.push_back(to_json(v));
    ctx.out << json{{"iterations", run.iterations},
                    {"converged", run.converged},
                    {"literal_hypotheses", run.literal_hypotheses},
                    {"sandwich_held", run.sandwich_held},
                    {"max_order_violation", run.max_order_violation},
                    {"x0", to_json(x0)},
                    {"y0", to_json(y0)},
                    {"solution", to_json(run.solution)},
                    {"x", xs},
                    {"y", ys}}
                   .dump()
            << '\n';
  }
  if (!run.sandwich_held) {
    ctx.err << "order sandwich violated by " << run.max_order_violation << '\n';
    return kPredictionViolated;
  }
  return kOk;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
  std::string a, u1, v1, u2, v2, u, v, f1, g1, f2, g2, cone = "orthant", format;
  std::size_t s = 2;
};

int cmd_compare(const CompareArgs& args, Context ctx) {
  const DenseMatrix a = read_matrix_csv(args.a);
  const SimplicialCone k = load_cone(args.cone, a.rows());
  ComparisonReport r;
  if (!args.f1.empty()) {
    if (args.u.empty() || args.v.empty() || args.g1.empty() || args.f2.empty() || args.g2.empty()) {
      throw InvalidConfig("inner comparison needs --U --V --F1 --G1 --F2 --G2");
    }
    const Splitting outer(a, read_matrix_csv(args.u), read_matrix_csv(args.v));
    const Splitting in1(outer.U(), read_matrix_csv(args.f1), read_matrix_csv(args.g1));
    const Splitting in2(outer.U(), read_matrix_csv(args.f2), read_matrix_csv(args.g2));
    r = compare_inner_splittings(outer, in1, in2, args.s, k);
  } else {
    if (args.u1.empty() || args.v1.empty() || args.u2.empty() || args.v2.empty()) {
      throw InvalidConfig("comparison needs --U1 --V1 --U2 --V2 (or the inner form)");
    }
    const Splitting s1(a, read_matrix_csv(args.u1), read_matrix_csv(args.v1));
    const Splitting s2(a, read_matrix_csv(args.u2), read_matrix_csv(args.v2));
    r = compare_splittings(s1, s2, k);
  }
  if (resolve(args.format, Format::Json) == Format::Json) {
    json hyps = json::object();
    for (const auto& [name, value] : r.hypotheses) hyps[name] = value;
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"hypotheses_hold", c.hypotheses_hold},
                        {"prediction_holds", c.prediction_holds}});
    }
    ctx.out << json{{"rho1", r.rho1},
                    {"rho2", r.rho2},
                    {"hypotheses", hyps},
                    {"checks", checks},
                    {"violation", r.any_violation()}}
                   .dump()
            << '\n';
  } else {
    write_csv_row(ctx.out, {"check", "hypotheses_hold", "prediction_holds", "rho1", "rho2"});
    for (const auto& c : r.checks) {
      write_csv_row(ctx.out, {c.name, csv_bool(c.hypotheses_hold), csv_bool(c.prediction_holds),
                              format_double(r.rho1), format_double(r.rho2)});
    }
  }
  return r.any_violation() ? kPredictionViolated : kOk;
}

// ------------------------------------------------------------------ driver

void add_format(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_model(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--params", m.params, "key=value parameter file (default: reference set)");
  sub->add_option("--phi", m.phi, "Override phi");
  sub->add_option("--contact", m.contact, "M x M contact matrix CSV");
  sub->add_option("--populations", m.populations, "Group populations CSV");
}

template <typename Fn>
int guarded(Fn&& fn, SingularMeaning singular, Context ctx) {
  try {
    return fn();
  } catch (const ParseError& e) {
    ctx.err << "parse error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InvalidParams& e) {
    ctx.err << "invalid parameters: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const SplittingMismatch& e) {
    ctx.err << e.what() << '\n';
    return kSplittingMismatch;
  } catch (const MismatchedA& e) {
    ctx.err << e.what() << '\n';
    return kSplittingMismatch;
  } catch (const SingularMatrix& e) {
    ctx.err << "singular matrix: " << e.what() << '\n';
    return singular == SingularMeaning::Transition ? kSingularTransition : kSingularU;
  } catch (const NoConvergence& e) {
    ctx.err << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kNoConvergence;
  } catch (const MaxIterations& e) {
    ctx.err << e.what() << '\n';
    return kNoConvergence;
  } catch (const HypothesisFailed& e) {
    ctx.err << e.what() << '\n';
    return kHypothesisFailed;
  } catch (const NotMonotone& e) {
    ctx.err << e.what() << '\n';
    return kNotMonotone;
  } catch (const Error& e) {
    ctx.err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-stage splitting solvers and SAIUQR next-generation matrix tools", "twostage"};
  app.require_subcommand(1);
  Context ctx{out, err};

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a splitting A = U - V over a cone");
  classify_cmd->add_option("--A", ca.a)->required();
  classify_cmd->add_option("--U", ca.u)->required();
  classify_cmd->add_option("--V", ca.v)->required();
  classify_cmd->add_option("--cone", ca.cone, "'orthant' or generator matrix CSV");
  add_format(classify_cmd, ca.format);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Two-stage solve of A X = B");
  solve_cmd->add_option("--A", sa.a)->required();
  solve_cmd->add_option("--B", sa.b)->required();
  solve_cmd->add_option("--outer", sa.outer, "jacobi | gauss-seidel | sor")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel", "sor"}));
  solve_cmd->add_option("--outer-omega", sa.outer_omega, "Relaxation of an SOR outer splitting");
  solve_cmd->add_option("--omega", sa.omega, "Relaxation of the inner SOR splitting");
  solve_cmd->add_option("--s", sa.schedule, "Inner counts, e.g. 2 or 1,2,3 (last repeats)");
  solve_cmd->add_option("--eps", sa.eps);
  solve_cmd->add_option("--max-outer", sa.max_outer);
  solve_cmd->add_option("--x0", sa.x0, "Initial guess CSV");
  solve_cmd->add_flag("--one-stage", sa.one_stage, "Classical iteration with the outer splitting");
  add_format(solve_cmd, sa.format);

  NgmArgs na;
  auto* ngm_cmd = app.add_subcommand("ngm", "Next-generation matrix and R0");
  add_model(ngm_cmd, na.model);
  ngm_cmd->add_option("--method", na.method)->check(CLI::IsMember({"direct", "twostage"}));
  ngm_cmd->add_option("--omega", na.omega);
  ngm_cmd->add_option("--s", na.s);
  ngm_cmd->add_option("--eps", na.eps);
  ngm_cmd->add_option("--max-outer", na.max_outer);
  add_format(ngm_cmd, na.format);

  Table1Args ta;
  auto* table_cmd = app.add_subcommand("table1", "Iteration counts over a phi sweep");
  add_model(table_cmd, ta.model);
  table_cmd->add_option("--phis", ta.phis);
  table_cmd->add_option("--sizes", ta.sizes);
  table_cmd->add_option("--omegas", ta.omegas, "Two inner relaxation factors");
  table_cmd->add_option("--s", ta.schedule);
  table_cmd->add_option("--outer", ta.outer)->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
  table_cmd->add_option("--eps", ta.eps);
  table_cmd->add_option("--max-outer", ta.max_outer);
  add_format(table_cmd, ta.format);

  MonotoneArgs ma;
  auto* mono_cmd = app.add_subcommand("monotone", "Bracketing iterates from below and above");
  add_model(mono_cmd, ma.model);
  mono_cmd->add_option("--x0", ma.x0, "Lower start, comma separated");
  mono_cmd->add_option("--y0", ma.y0, "Upper start, comma separated");
  mono_cmd->add_option("--s", ma.schedule);
  mono_cmd->add_option("--omega", ma.omega);
  mono_cmd->add_option("--eps", ma.eps);
  mono_cmd->add_option("--column", ma.column, "Right-hand side column of the infection matrix");
  mono_cmd->add_option("--max-outer", ma.max_outer);
  add_format(mono_cmd, ma.format);

  CompareArgs cm;
  auto* cmp_cmd = app.add_subcommand("compare", "Check comparison theorems on two splittings");
  cmp_cmd->add_option("--A", cm.a)->required();
  cmp_cmd->add_option("--U1", cm.u1);
  cmp_cmd->add_option("--V1", cm.v1);
  cmp_cmd->add_option("--U2", cm.u2);
  cmp_cmd->add_option("--V2", cm.v2);
  cmp_cmd->add_option("--U", cm.u, "Outer U (inner comparison)");
  cmp_cmd->add_option("--V", cm.v, "Outer V (inner comparison)");
  cmp_cmd->add_option("--F1", cm.f1);
  cmp_cmd->add_option("--G1", cm.g1);
  cmp_cmd->add_option("--F2", cm.f2);
  cmp_cmd->add_option("--G2", cm.g2);
  cmp_cmd->add_option("--s", cm.s);
  cmp_cmd->add_option("--cone", cm.cone);
  add_format(cmp_cmd, cm.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  using SM = SingularMeaning;
  if (*classify_cmd) return guarded([&] { return cmd_classify(ca, ctx); }, SM::SplittingU, ctx);
  if (*solve_cmd) return guarded([&] { return cmd_solve(sa, ctx); }, SM::SplittingU, ctx);
  if (*ngm_cmd) return guarded([&] { return cmd_ngm(na, ctx); }, SM::Transition, ctx);
  if (*table_cmd) return guarded([&] { return cmd_table1(ta, ctx); }, SM::Transition, ctx);
  if (*mono_cmd) return guarded([&] { return cmd_monotone(ma, ctx); }, SM::Transition, ctx);
  if (*cmp_cmd) return guarded([&] { return cmd_compare(cm, ctx); }, SM::SplittingU, ctx);
  return kFailure;
}

}  // namespace twostage::cli
