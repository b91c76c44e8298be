#include "qint/cli.hpp"

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "qint/approx.hpp"
#include "qint/errors.hpp"
#include "qint/fixtures.hpp"
#include "qint/io.hpp"

namespace qint {

namespace {

std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("QINT_CELL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultCellBudget;
}

void emit_report(const RunConfig& cfg, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out_path.empty())
    std::cout << text;
  else
    write_text_file(cfg.out_path, text);
}

void emit_csv(const RunConfig& cfg, const std::vector<std::vector<std::string>>& rows) {
  if (cfg.csv_path.empty()) return;
  write_text_file(cfg.csv_path, to_csv(rows));
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

RunConfig::RunConfig() : cell_budget(budget_from_env()) {}

// ---------------------------------------------------------------------------
// qint algebra {build,check}
// ---------------------------------------------------------------------------

int cmd_algebra(const std::string& action, const RunConfig& cfg) {
  if (action != "build" && action != "check") {
    std::cerr << "unknown algebra action " << action << "\n";
    return kExitConfig;
  }
  LoadedAlgebra loaded;
  try {
    if (!cfg.fixture.empty()) {
      AlgebraPtr alg = algebra_fixture(cfg.fixture);
      loaded = LoadedAlgebra{alg, default_pnorm(alg, 1.0)};
    } else if (!cfg.input_path.empty())
      loaded = load_algebra_file(cfg.input_path);
    else {
      std::cerr << "algebra " << action << " needs --fixture or a definition file\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const StructureConstantAlgebra& alg = *loaded.algebra;
  const VerifyReport verification = verify_algebra(alg, kTolAlg);

  json report = report_skeleton("algebra " + action, cfg.seed, json{{"tol_alg", kTolAlg}},
                                json{{"algebra", fixture_hash(alg)}});
  report["algebra"] = json{{"name", alg.name}, {"dim", alg.dim()},
                           {"basis_labels", alg.basis_labels}};
  report["verification"] = verify_report_to_json(verification);
  if (action == "build") report["definition"] = algebra_to_json(alg);
  emit_report(cfg, report);
  return verification.ok() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// qint hom check
// ---------------------------------------------------------------------------

int cmd_hom_check(const RunConfig& cfg) {
  AlgebraHom hom;
  try {
    if (cfg.fixture == "example7-sigma")
      hom = example7_sigma();
    else if (!cfg.input_path.empty())
      hom = load_hom_file(cfg.input_path);
    else {
      std::cerr << "hom check needs --fixture example7-sigma or a hom file\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const VerifyReport verification = verify_hom(hom, kTolAlg);
  json report = report_skeleton("hom check", cfg.seed, json{{"tol_alg", kTolAlg}},
                                json{{"domain", fixture_hash(*hom.domain)},
                                     {"codomain", fixture_hash(*hom.codomain)}});
  report["domain"] = hom.domain->name;
  report["codomain"] = hom.codomain->name;
  report["verification"] = verify_report_to_json(verification);
  emit_report(cfg, report);
  return verification.ok() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// qint integrate
// ---------------------------------------------------------------------------

int cmd_integrate(const RunConfig& cfg) {
  IntegrateFixture fx;
  std::string run_name;
  std::string rule_name = cfg.rule;
  double tol = cfg.tol;
  int u_max = cfg.u;
  try {
    if (!cfg.fixture.empty()) {
      fx = integrate_fixture(cfg.fixture);
      run_name = cfg.fixture;
      if (tol <= 0) tol = fx.default_tol;
      if (u_max < 0) u_max = fx.default_u_max;
    } else if (!cfg.input_path.empty()) {
      IntegrateConfig file_cfg = load_integrate_config_file(cfg.input_path);
      fx = IntegrateFixture{"config", file_cfg.ctx, file_cfg.handle, file_cfg.u_max,
                            file_cfg.tol, std::nullopt};
      run_name = cfg.input_path;
      if (tol <= 0) tol = file_cfg.tol;
      if (u_max < 0) u_max = file_cfg.u_max;
      if (cfg.rule == "midpoint" && file_cfg.rule == "corner") rule_name = "corner";
    } else {
      std::cerr << "integrate needs --fixture (one of:";
      for (const auto& n : integrate_fixture_names()) std::cerr << " " << n;
      std::cerr << ") or --config <file>\n";
      return kExitConfig;
    }
    if (rule_name != "midpoint" && rule_name != "corner") {
      std::cerr << "rule must be midpoint or corner\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  const SampleRule rule = rule_name == "corner" ? SampleRule::corner : SampleRule::midpoint;

  IntegralReport result;
  try {
    result = integrate_limit(fx.handle, fx.ctx, tol, u_max, rule, cfg.cell_budget);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  json report = report_skeleton("integrate " + run_name, cfg.seed,
                                json{{"tol", tol}, {"u_max", u_max}},
                                json{{"A", fixture_hash(*fx.ctx.A)},
                                     {"B", fixture_hash(*fx.ctx.B)}});
  report["rule"] = rule_name;
  report["result"] = integral_report_to_json(result, fx.ctx.B);
  if (fx.reference)
    report["reference"] = element_to_json(AlgebraElement{fx.ctx.B, *fx.reference});
  emit_report(cfg, report);

  std::vector<std::string> header{"level", "delta"};
  for (const auto& label : fx.ctx.B->basis_labels) header.push_back(label);
  std::vector<std::vector<std::string>> csv{header};
  for (std::size_t u = 0; u < result.level_values.size(); ++u) {
    std::vector<std::string> row{std::to_string(u),
                                 u == 0 ? std::string() : fmt(result.deltas[u - 1])};
    for (double c : result.level_values[u].coeffs) row.push_back(fmt(c));
    csv.push_back(std::move(row));
  }
  emit_csv(cfg, csv);

  // Exact single-level evaluations (constant integrands) count as converged.
  const bool exact = result.levels >= 1 && !result.deltas.empty() && result.deltas.back() == 0.0;
  return (result.converged || exact) ? kExitOk : kExitUnconverged;
}

// ---------------------------------------------------------------------------
// qint laws <suite>
// ---------------------------------------------------------------------------

namespace {

LawReport run_norm_suite(const RunConfig& cfg) {
  LawReport report;
  const int trials = cfg.trials > 0 ? cfg.trials : 1000;
  SplitRng rng(cfg.seed, 1);
  const AlgebraPtr B = example7_B();
  for (double p : {1.0, 2.0, 3.0}) {
    const PNormSpec spec = default_pnorm(B, p);
    double triangle = 0.0, homogeneity = 0.0;
    for (int t = 0; t < trials; ++t) {
      SplitRng trial = rng.split(static_cast<std::uint64_t>(p * 1000) + t);
      const AlgebraElement x = random_element(B, trial, 2.0);
      const AlgebraElement y = random_element(B, trial, 2.0);
      triangle = std::max(triangle, algebra_norm(spec, add(x, y)) - algebra_norm(spec, x) -
                                        algebra_norm(spec, y));
      const double lambda = trial.uniform(-10.0, 10.0);
      homogeneity = std::max(homogeneity, std::abs(algebra_norm(spec, scale(lambda, x)) -
                                                   std::abs(lambda) * algebra_norm(spec, x)));
    }
    report.add("triangle inequality (p=" + fmt(p) + ")", std::max(0.0, triangle), 1e-12);
    report.add("absolute homogeneity (p=" + fmt(p) + ")", homogeneity, 1e-12);
  }
  // Point separation with strictly positive basis norm.
  const PNormSpec spec1 = default_pnorm(B, 2.0);
  double separation = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(0x5eb0000 + t);
    AlgebraElement x = random_element(B, trial);
    if (algebra_norm(spec1, x) <= 1e-12) separation = std::max(separation, max_abs(x));
  }
  report.add("point separation (norm zero => element zero)", separation, 1e-12);

  // Seminorm vanishes on a computed kernel basis.
  const AlgebraHom sigma = example7_sigma();
  const PNormSpec bspec = default_pnorm(example7_B(), 1.0);
  double kernel_res = 0.0;
  for (const auto& v : kernel_basis(sigma))
    kernel_res = std::max(kernel_res, seminorm_sigma(sigma, bspec, AlgebraElement{example7_A(), v}));
  report.add("seminorm vanishes on Ker(sigma)", kernel_res, 10 * kTolAlg);

  // p=1 refinement invariance: random box splits keep the step norm.
  SigmaContext ctx = identity_context(example7_B(), 2);
  double split_res = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(0xab0000 + t);
    StepFunction f = random_step_function(ctx, trial);
    const double before = step_norm(f, ctx.b_norm);
    // Split one random piece along one random axis.
    if (!f.pieces.empty()) {
      const int idx = trial.uniform_int(static_cast<int>(f.pieces.size()));
      auto [box, coeffs] = f.pieces[idx];
      const int axis = trial.uniform_int(ctx.domain->dim);
      const AxisInterval ax = box.axes[axis];
      if (ax.hi > ax.lo) {
        const double cut = trial.uniform(ax.lo, ax.hi);
        if (cut > ax.lo && cut < ax.hi) {
          Box left = box, right = box;
          left.axes[axis] = AxisInterval{ax.lo, cut, ax.lo_closed, false};
          right.axes[axis] = AxisInterval{cut, ax.hi, true, ax.hi_closed};
          f.pieces.erase(f.pieces.begin() + idx);
          f.pieces.emplace_back(left, coeffs);
          f.pieces.emplace_back(right, coeffs);
        }
      }
    }
    split_res = std::max(split_res, std::abs(step_norm(f, ctx.b_norm) - before));
  }
  report.add("p=1 refinement invariance of the step norm", split_res, 1e-12);
  return report;
}

LawReport run_bimodule_suite(const RunConfig& cfg) {
  LawReport report;
  const int trials = cfg.trials > 0 ? cfg.trials : 200;
  SplitRng rng(cfg.seed, 2);
  SigmaContext ctx = identity_context(example7_B(), 2);
  const std::size_t arity = std::size_t(1) << ctx.domain->dim;

  double m_laws = 0.0, compat = 0.0, assoc_action = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(t);
    const StepFunction f = random_step_function(ctx, trial);
    const AlgebraElement a1 = random_element(ctx.A, trial);
    const AlgebraElement a2 = random_element(ctx.A, trial);
    const AlgebraElement b1 = random_element(ctx.B, trial);
    const AlgebraElement b2 = random_element(ctx.B, trial);
    std::vector<double> x(ctx.domain->dim);
    for (auto& v : x) v = trial.uniform(ctx.domain->lo, ctx.domain->hi);

    const AlgebraElement oneA = unit_element(ctx.A);
    const AlgebraElement oneB = unit_element(ctx.B);
    // 4M / M4: unit actions fix f.
    m_laws = std::max(m_laws, max_abs_diff(evaluate(module_action(oneA, f, oneB, ctx.sigma), x),
                                           evaluate(f, x)));
    // 1M/M1: additivity in the ring arguments.
    const StepFunction lhs_add = module_action(add(a1, a2), f, b1, ctx.sigma);
    const StepFunction rhs_add = sf_add(module_action(a1, f, b1, ctx.sigma),
                                        module_action(a2, f, b1, ctx.sigma));
    m_laws = std::max(m_laws, max_abs_diff(evaluate(lhs_add, x), evaluate(rhs_add, x)));
    // 3M: (a1 a2).f = a1.(a2.f).
    const StepFunction lhs3 = module_action(mul(a1, a2), f, oneB, ctx.sigma);
    const StepFunction rhs3 =
        module_action(a1, module_action(a2, f, oneB, ctx.sigma), oneB, ctx.sigma);
    assoc_action = std::max(assoc_action, max_abs_diff(evaluate(lhs3, x), evaluate(rhs3, x)));
    // M3 on the right: f.(b1 b2) = (f.b1).b2.
    const StepFunction lhsr = module_action(oneA, f, mul(b1, b2), ctx.sigma);
    const StepFunction rhsr =
        module_action(oneA, module_action(oneA, f, b1, ctx.sigma), b2, ctx.sigma);
    assoc_action = std::max(assoc_action, max_abs_diff(evaluate(lhsr, x), evaluate(rhsr, x)));
    // Compatibility (a.f).b = a.(f.b).
    const StepFunction lhsc = module_action(a1, module_action(oneA, f, b1, ctx.sigma), oneB,
                                            ctx.sigma);
    const StepFunction rhsc = module_action(oneA, module_action(a1, f, oneB, ctx.sigma), b1,
                                            ctx.sigma);
    compat = std::max(compat, max_abs_diff(evaluate(lhsc, x), evaluate(rhsc, x)));
  }
  report.add("bimodule unit + additivity laws (pointwise)", m_laws, 1e-9);
  report.add("bimodule associativity 3M/M3 (pointwise)", assoc_action, 1e-9);
  report.add("compatibility (a.f).b = a.(f.b)", compat, 1e-9);

  // gamma linearity and gamma bimodule property.
  double gamma_lin = 0.0, gamma_bimod = 0.0, dirsum = 0.0;
  for (int t = 0; t < trials / 4 + 1; ++t) {
    SplitRng trial = rng.split(0x700000 + t);
    std::vector<StepFunction> fs, gs;
    for (std::size_t i = 0; i < arity; ++i) {
      fs.push_back(random_step_function(ctx, trial));
      gs.push_back(random_step_function(ctx, trial));
    }
    const double alpha = trial.uniform(-2.0, 2.0);
    const double beta = trial.uniform(-2.0, 2.0);
    std::vector<StepFunction> combos;
    for (std::size_t i = 0; i < arity; ++i)
      combos.push_back(sf_add(sf_scale(alpha, fs[i]), sf_scale(beta, gs[i])));
    const StepFunction lhs = gamma_xi(combos);
    const StepFunction rhs = sf_add(sf_scale(alpha, gamma_xi(fs)), sf_scale(beta, gamma_xi(gs)));
    std::vector<double> x(ctx.domain->dim);
    for (int probe = 0; probe < 16; ++probe) {
      for (auto& v : x) v = trial.uniform(ctx.domain->lo, ctx.domain->hi);
      gamma_lin = std::max(gamma_lin, max_abs_diff(evaluate(lhs, x), evaluate(rhs, x)));
    }

    const AlgebraElement a = random_element(ctx.A, trial);
    const AlgebraElement b = random_element(ctx.B, trial);
    std::vector<StepFunction> acted;
    for (std::size_t i = 0; i < arity; ++i)
      acted.push_back(module_action(a, fs[i], b, ctx.sigma));
    const StepFunction lhs_b = gamma_xi(acted);
    const StepFunction rhs_b = module_action(a, gamma_xi(fs), b, ctx.sigma);
    for (int probe = 0; probe < 16; ++probe) {
      for (auto& v : x) v = trial.uniform(ctx.domain->lo, ctx.domain->hi);
      gamma_bimod = std::max(gamma_bimod, max_abs_diff(evaluate(lhs_b, x), evaluate(rhs_b, x)));
    }

    // Weighted direct-sum norm law: assembled norm agrees with the component
    // formula.
    for (double p : {1.0, 2.0}) {
      PNormSpec spec = default_pnorm(ctx.B, p);
      const double direct = step_norm(gamma_xi(fs), spec);
      double acc = 0.0;
      const double mu = ctx.domain->total_measure();
      for (unsigned sig = 0; sig < arity; ++sig) {
        const double w = sub_box_measure(*ctx.domain, sig) / mu;
        acc += std::pow(w * step_norm(fs[sig], spec), p);
      }
      dirsum = std::max(dirsum, std::abs(direct - std::pow(acc, 1.0 / p)));
    }
  }
  report.add("gamma linearity (pointwise)", gamma_lin, 1e-9);
  report.add("gamma bimodule property (pointwise)", gamma_bimod, 1e-9);
  report.add("direct-sum norm law (two routes)", dirsum, 1e-9);

  // N2: equality on the multiplicative subcases, bounded inflation otherwise.
  double n2_scalar = 0.0, n2_complex = 0.0;
  SigmaContext cplx = identity_context(complex_realified(), 1, 0.0, 1.0, 0.5, 2.0);
  SigmaContext scal = scalar_context_1d();
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(0x900000 + t);
    {
      const StepFunction f = random_step_function(scal, trial);
      const AlgebraElement a = random_element(scal.A, trial);
      const AlgebraElement b = random_element(scal.B, trial);
      const double lhs = step_norm(module_action(a, f, b, scal.sigma), scal.b_norm);
      const double rhs = seminorm_sigma(scal.sigma, scal.b_norm, a) *
                         step_norm(f, scal.b_norm) * algebra_norm(scal.b_norm, b);
      n2_scalar = std::max(n2_scalar, std::abs(lhs - rhs));
    }
    {
      // Realified complex scalars are norm-multiplicative at p = 2.
      const StepFunction f = random_step_function(cplx, trial);
      const AlgebraElement a = random_element(cplx.A, trial);
      const AlgebraElement b = random_element(cplx.B, trial);
      const double lhs = step_norm(module_action(a, f, b, cplx.sigma), cplx.b_norm);
      const double rhs = seminorm_sigma(cplx.sigma, cplx.b_norm, a) *
                         step_norm(f, cplx.b_norm) * algebra_norm(cplx.b_norm, b);
      n2_complex = std::max(n2_complex, std::abs(lhs - rhs));
    }
  }
  report.add("N2 equality (scalar base)", n2_scalar, 1e-9);
  report.add("N2 equality (realified complex, p=2)", n2_complex, 1e-9);

  // Scalar multiples of the unit give equality over any B.
  double n2_unit = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(0xa00000 + t);
    const StepFunction f = random_step_function(ctx, trial);
    const AlgebraElement a = scale(trial.uniform(-2.0, 2.0), unit_element(ctx.A));
    const AlgebraElement b = scale(trial.uniform(-2.0, 2.0), unit_element(ctx.B));
    const double lhs = step_norm(module_action(a, f, b, ctx.sigma), ctx.b_norm);
    // ||a.f.b|| = |alpha| |beta| ||f|| for a = alpha 1, b = beta 1.
    double alpha = a.coeffs[0], beta = b.coeffs[0];
    const double rhs = std::abs(alpha) * std::abs(beta) * step_norm(f, ctx.b_norm);
    n2_unit = std::max(n2_unit, std::abs(lhs - rhs));
  }
  report.add("N2 equality (scalar multiples of the unit)", n2_unit, 1e-9);
  return report;
}

ThetaFn shipped_theta(bool mutated) {
  if (!mutated) return [](const StepFunction& f) { return integrate_step(f); };
  return [](const StepFunction& f) { return scale(1.01, integrate_step(f)); };
}

LawReport run_hsquare_suite(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 100;
  const bool mutated = cfg.fixture == "mutated-theta";
  LawReport report;
  SplitRng rng(cfg.seed, 3);
  int stream = 0;
  for (int dim : {1, 2}) {
    SigmaContext ctx = dim == 1 ? scalar_context_1d() : identity_context(example7_B(), 2);
    LawReport part = check_H_laws(ctx, shipped_theta(mutated), trials, rng.split(stream++));
    for (auto& row : part.rows) {
      row.law = "d=" + std::to_string(dim) + " " + row.law;
      report.rows.push_back(row);
    }
    // Distinguished-element bounds assume ||1_B|| = 1, so the triple checks
    // run on scalar contexts of the matching dimension.
    LawReport triple = check_triple_laws(
        dim == 1 ? scalar_context_1d() : identity_context(scalar_real_algebra(), 2));
    for (auto& row : triple.rows) {
      row.law = "d=" + std::to_string(dim) + " " + row.law;
      report.rows.push_back(row);
    }
  }
  return report;
}

LawReport run_daniell_suite(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 100;
  LawReport report;
  SplitRng rng(cfg.seed, 4);
  {
    LawReport part = daniell_suite(scalar_context_1d(), trials, rng.split(0));
    for (auto& row : part.rows) {
      row.law = "scalar " + row.law;
      report.rows.push_back(row);
    }
  }
  {
    LawReport part = daniell_suite(identity_context(example7_B(), 1), trials, rng.split(1));
    for (auto& row : part.rows) {
      row.law = "B " + row.law;
      report.rows.push_back(row);
    }
  }
  return report;
}

LawReport run_opnorm_suite(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 200;
  const int u_max = cfg.u >= 0 ? cfg.u : 4;
  LawReport report;
  SplitRng rng(cfg.seed, 5);
  {
    LawReport part = operator_norm_check(scalar_context_1d(), u_max, trials, rng.split(0));
    for (auto& row : part.rows) {
      row.law = "mu=1 " + row.law;
      report.rows.push_back(row);
    }
  }
  {
    const AlgebraPtr R = scalar_real_algebra();
    SigmaContext wide = make_context(R, R, identity_hom(R), make_domain(1, 0.0, 2.0, 1.0), 1.0);
    LawReport part = operator_norm_check(wide, u_max, trials, rng.split(1));
    for (auto& row : part.rows) {
      row.law = "mu=2 " + row.law;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace

int cmd_laws(const std::string& suite, const RunConfig& cfg) {
  LawReport result;
  int effective_trials = cfg.trials;
  try {
    if (suite == "norms") {
      if (effective_trials <= 0) effective_trials = 1000;
      result = run_norm_suite(cfg);
    } else if (suite == "bimodule") {
      if (effective_trials <= 0) effective_trials = 200;
      result = run_bimodule_suite(cfg);
    } else if (suite == "hsquare") {
      if (effective_trials <= 0) effective_trials = 100;
      result = run_hsquare_suite(cfg);
    } else if (suite == "daniell") {
      if (effective_trials <= 0) effective_trials = 100;
      result = run_daniell_suite(cfg);
    } else if (suite == "opnorm") {
      if (effective_trials <= 0) effective_trials = 200;
      result = run_opnorm_suite(cfg);
    } else {
      std::cerr << "unknown law suite " << suite
                << " (norms | bimodule | hsquare | daniell | opnorm)\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  json report = report_skeleton("laws " + suite, cfg.seed,
                                json{{"trials", effective_trials}},
                                json{{"example7-A", fixture_hash(*example7_A())},
                                     {"example7-B", fixture_hash(*example7_B())}});
  if (!cfg.fixture.empty()) report["fixture"] = cfg.fixture;
  report["laws"] = law_report_to_json(result);
  emit_report(cfg, report);
  return result.ok() ? kExitOk : kExitViolation;
}

int cmd_approx(const std::string& kind, const std::string& fixture,
               const std::vector<int>& orders, const RunConfig& cfg) {
  if (orders.empty()) {
    std::cerr << "approx needs --orders\n";
    return kExitConfig;
  }
  ConvergenceReport result;
  const int u = cfg.u >= 0 ? cfg.u : 12;
  try {
    const auto h = scalar_fixture(fixture);
    if (kind == "taylor") {
      result = convergence_report(h, SeriesKind::taylor,
                                  taylor_fixture_coeffs(fixture, orders.back()), orders, u);
    } else if (kind == "fourier") {
      result = convergence_report(h, SeriesKind::fourier, {}, orders, u);
    } else {
      std::cerr << "approx kind must be taylor or fourier\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<std::vector<std::string>> csv{{"order", "l1_error"}};
  for (const auto& row : result.rows)
    csv.push_back({std::to_string(row.order), fmt(row.l1_error)});
  if (cfg.csv_path.empty())
    std::cout << to_csv(csv);
  else
    write_text_file(cfg.csv_path, to_csv(csv));

  if (!cfg.out_path.empty()) {
    json report = report_skeleton("approx " + kind + " " + fixture, cfg.seed,
                                  json{{"u", u}}, json::object());
    json rows = json::array();
    for (const auto& row : result.rows)
      rows.push_back({{"order", row.order}, {"l1_error", row.l1_error}});
    report["rows"] = rows;
    report["weakly_decreasing"] = result.weakly_decreasing;
    write_text_file(cfg.out_path, report.dump(2) + "\n");
  }
  return result.weakly_decreasing ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// argv entry point
// ---------------------------------------------------------------------------

int qint_main(int argc, char** argv) {
  CLI::App app{"qint - computational engine for quiver-presented algebras, "
               "algebra-valued step functions, and refinement integration"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string action, suite, kind, fixture_pos;
  std::vector<int> orders;

  auto add_common = [&](CLI::App* sub, bool with_fixture = true) {
    sub->add_option("--out", cfg.out_path, "write the JSON report to this path");
    sub->add_option("--csv", cfg.csv_path, "write the CSV twin to this path");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--trials", cfg.trials, "trial count override");
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--u", cfg.u, "refinement level cap");
    if (with_fixture) sub->add_option("--fixture", cfg.fixture, "built-in fixture name");
  };

  CLI::App* algebra = app.add_subcommand("algebra", "build or check an algebra definition");
  algebra->add_option("action", action, "build | check")->required();
  algebra->add_option("file", cfg.input_path, "algebra definition JSON");
  add_common(algebra);

  CLI::App* hom = app.add_subcommand("hom", "check a hom definition");
  std::string hom_action;
  hom->add_option("action", hom_action, "check")->required();
  hom->add_option("file", cfg.input_path, "hom definition JSON");
  add_common(hom);

  CLI::App* integrate = app.add_subcommand("integrate", "run a refinement integration");
  integrate->add_option("--rule", cfg.rule, "midpoint | corner");
  integrate->add_option("--config", cfg.input_path, "integrate run-config JSON");
  add_common(integrate);

  CLI::App* laws = app.add_subcommand("laws", "run a law suite");
  laws->add_option("suite", suite, "norms | bimodule | hsquare | daniell | opnorm")->required();
  add_common(laws);

  CLI::App* approx = app.add_subcommand("approx", "series approximation report");
  approx->add_option("kind", kind, "taylor | fourier")->required();
  approx->add_option("fixture", fixture_pos, "scalar fixture name")->required();
  approx->add_option("--orders", orders, "strictly increasing truncation orders")->required();
  add_common(approx, /*with_fixture=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (algebra->parsed()) return cmd_algebra(action, cfg);
    if (hom->parsed()) {
      if (hom_action != "check") {
        std::cerr << "hom supports only: check\n";
        return kExitConfig;
      }
      return cmd_hom_check(cfg);
    }
    if (integrate->parsed()) return cmd_integrate(cfg);
    if (laws->parsed()) return cmd_laws(suite, cfg);
    if (approx->parsed()) return cmd_approx(kind, fixture_pos, orders, cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace qint
