#include "qint/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qint/errors.hpp"

namespace qint {

void SigmaContext::validate() const {
  if (!A || !B || !domain) fail("InvalidInput", "incomplete sigma context");
  sigma.validate_shape();
  if (sigma.domain != A || sigma.codomain != B)
    fail("AlgebraMismatch", "sigma endpoints do not match the context algebras");
  domain->validate();
  b_norm.validate();
  if (b_norm.basis_norm.algebra != B) fail("AlgebraMismatch", "norm spec is not over B");
}

SigmaContext make_context(AlgebraPtr A, AlgebraPtr B, AlgebraHom sigma, DomainPtr domain,
                          double p) {
  SigmaContext ctx;
  ctx.A = std::move(A);
  ctx.B = std::move(B);
  ctx.sigma = std::move(sigma);
  ctx.domain = std::move(domain);
  ctx.b_norm = default_pnorm(ctx.B, p);
  ctx.validate();
  return ctx;
}

// ---------------------------------------------------------------------------
// The averaging map and T
// ---------------------------------------------------------------------------

AlgebraElement frakA(const std::vector<AlgebraElement>& bs, const std::vector<double>& measures,
                     double total_measure) {
  if (bs.empty()) fail("ArityMismatch", "frakA needs 2^dim inputs");
  if (bs.size() != measures.size()) fail("ArityMismatch", "one measure per input required");
  const std::size_t arity = bs.size();
  if ((arity & (arity - 1)) != 0) fail("ArityMismatch", "input count must be a power of two");
  double sum = 0.0;
  for (double m : measures) sum += m;
  if (std::abs(sum - total_measure) > 1e-12 * std::max(1.0, std::abs(total_measure)))
    fail("BadWeights", "sub-box measures do not sum to the total measure");
  AlgebraElement acc = zero_element(bs.front().algebra);
  for (std::size_t i = 0; i < arity; ++i)
    acc = add(acc, scale(measures[i] / total_measure, bs[i]));
  return acc;
}

AlgebraElement frakA(const DomainBoxSpec& d, const std::vector<AlgebraElement>& bs) {
  const std::size_t arity = std::size_t(1) << d.dim;
  if (bs.size() != arity)
    fail("ArityMismatch", "frakA needs exactly " + std::to_string(arity) + " inputs");
  std::vector<double> measures(arity);
  for (unsigned sig = 0; sig < arity; ++sig) measures[sig] = sub_box_measure(d, sig);
  return frakA(bs, measures, d.total_measure());
}

namespace {

/// Neumaier compensated accumulator, one per coefficient.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

AlgebraElement integrate_step(const StepFunction& f) {
  const int n = f.algebra->dim();
  std::vector<Kahan> acc(n);
  for (const auto& [box, coeffs] : f.pieces) {
    const double m = box.measure();
    for (int k = 0; k < n; ++k)
      if (coeffs[k] != 0.0) acc[k].add(coeffs[k] * m);
  }
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = acc[k].value();
  return AlgebraElement{f.algebra, std::move(out)};
}

AlgebraElement integrate_at_level(const FunctionHandle& h, const SigmaContext& ctx, int u,
                                  SampleRule rule, std::uint64_t cell_budget) {
  const int n = h.codomain->dim();
  std::vector<Kahan> acc(n);
  for_each_Eu_cell(
      *ctx.domain, u, rule,
      [&](const std::vector<double>& point, double measure) {
        const std::vector<double> value = h.fn(point);
        for (int k = 0; k < n; ++k)
          if (value[k] != 0.0) acc[k].add(value[k] * measure);
      },
      cell_budget);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = acc[k].value();
  return AlgebraElement{h.codomain, std::move(out)};
}

IntegralReport integrate_limit(const FunctionHandle& h, const SigmaContext& ctx, double tol,
                               int u_max, SampleRule rule, std::uint64_t cell_budget) {
  if (!(tol > 0.0)) fail("InvalidInput", "tolerance must be positive");
  if (u_max < 0) fail("InvalidInput", "u_max must be >= 0");
  ctx.validate();
  IntegralReport report;
  report.value = zero_element(h.codomain);
  for (int u = 0; u <= u_max; ++u) {
    const double need = std::pow(2.0, double(ctx.domain->dim) * u);
    if (need > static_cast<double>(cell_budget)) {
      // Budget exhausted before u_max: keep the trace, stay unconverged.
      break;
    }
    AlgebraElement v = integrate_at_level(h, ctx, u, rule, cell_budget);
    report.cells += static_cast<std::uint64_t>(need);
    if (!report.level_values.empty()) {
      const double delta = algebra_norm(ctx.b_norm, sub(v, report.level_values.back()));
      report.deltas.push_back(delta);
      report.level_values.push_back(v);
      report.value = v;
      report.levels = static_cast<int>(report.level_values.size());
      if (delta < tol) {
        report.converged = true;
        return report;
      }
    } else {
      report.level_values.push_back(v);
      report.value = v;
      report.levels = 1;
      if (u_max == 0) return report;  // single-level request: no delta to judge
    }
  }
  return report;
}

IntegralReport bochner_integrate(const FunctionHandle& h, int n, double tol, int u_max,
                                 SampleRule rule, std::uint64_t cell_budget) {
  if (n < 1) fail("InvalidInput", "domain dimension must be >= 1");
  // Semisimple coordinate algebras with the zero connecting map.
  auto coordinate_algebra = [](int k, const std::string& name) {
    StructureConstantAlgebra alg;
    alg.name = name;
    for (int i = 0; i < k; ++i) alg.basis_labels.push_back("e" + std::to_string(i + 1));
    alg.mult_table.assign(k, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)));
    for (int i = 0; i < k; ++i) alg.mult_table[i][i][i] = 1.0;
    alg.unit.assign(k, 1.0);
    for (int i = 0; i < k; ++i) {
      std::vector<double> v(k, 0.0);
      v[i] = 1.0;
      alg.idempotents.push_back(std::move(v));
    }
    return make_algebra(std::move(alg));
  };
  const AlgebraPtr A = coordinate_algebra(n, "R^" + std::to_string(n));
  const AlgebraPtr B = h.codomain;
  SigmaContext ctx = make_context(A, B, zero_hom(A, B), make_domain(n), 1.0);
  return integrate_limit(h, ctx, tol, u_max, rule, cell_budget);
}

IntegralReport lebesgue_integrate(const std::function<double(double)>& h, double tol, int u_max,
                                  SampleRule rule, std::uint64_t cell_budget) {
  FunctionHandle handle{scalar_real_algebra(), [h](const std::vector<double>& x) {
                          return std::vector<double>{h(x[0])};
                        }};
  return bochner_integrate(handle, 1, tol, u_max, rule, cell_budget);
}

// ---------------------------------------------------------------------------
// Law harness
// ---------------------------------------------------------------------------

bool LawReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const LawRow& r) { return r.pass; });
}

void LawReport::add(std::string law, double residual, double tolerance, std::string note) {
  rows.push_back(LawRow{std::move(law), residual, tolerance, residual <= tolerance,
                        std::move(note)});
}

void LawReport::add_at_least(std::string law, double value, double bound, std::string note) {
  rows.push_back(LawRow{std::move(law), value, bound, value >= bound, std::move(note)});
}

AlgebraElement random_element(const AlgebraPtr& alg, SplitRng& rng, double amp) {
  std::vector<double> c(alg->dim());
  for (auto& v : c) v = rng.uniform(-amp, amp);
  return AlgebraElement{alg, std::move(c)};
}

StepFunction random_step_function(const SigmaContext& ctx, SplitRng& rng, int max_pieces) {
  const auto& d = *ctx.domain;
  StepFunction f = zero_step(ctx.domain, ctx.B);
  const int want = 1 + rng.uniform_int(max_pieces);
  int attempts = 0;
  while (static_cast<int>(f.pieces.size()) < want && attempts < 64) {
    ++attempts;
    Box box;
    box.axes.reserve(d.dim);
    for (int k = 0; k < d.dim; ++k) {
      double a = rng.uniform(d.lo, d.hi);
      double b = rng.uniform(d.lo, d.hi);
      if (a > b) std::swap(a, b);
      if (a == b) b = std::min(d.hi, a + 0.01 * d.length());
      box.axes.push_back(AxisInterval{a, b, rng.uniform() < 0.5, rng.uniform() < 0.5});
    }
    bool clear = true;
    for (const auto& [existing, coeffs] : f.pieces) {
      (void)coeffs;
      if (!boxes_disjoint(existing, box)) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    f.pieces.emplace_back(std::move(box), random_element(ctx.B, rng).coeffs);
  }
  return f;
}

LawReport check_H_laws(const SigmaContext& ctx, const ThetaFn& theta, int trials, SplitRng rng,
                       double tol) {
  ctx.validate();
  LawReport report;
  const auto& d = *ctx.domain;
  const std::size_t arity = std::size_t(1) << d.dim;

  // H1 on the distinguished elements.
  const StepFunction one = constant_step(ctx.domain, unit_element(ctx.B));
  const AlgebraElement target_v = scale(d.total_measure(), unit_element(ctx.B));
  report.add("H1: theta(1_IA) = mu(IA) 1_B",
             algebra_norm(ctx.b_norm, sub(theta(one), target_v)), tol);

  double h2 = 0.0, lin = 0.0, bimod = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(static_cast<std::uint64_t>(t));
    std::vector<StepFunction> tuple;
    tuple.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) tuple.push_back(random_step_function(ctx, trial));

    // H2: both routes around the square, computed independently.
    const AlgebraElement via_gamma = theta(gamma_xi(tuple));
    std::vector<AlgebraElement> integrals;
    integrals.reserve(arity);
    for (const auto& f : tuple) integrals.push_back(theta(f));
    const AlgebraElement via_average = frakA(d, integrals);
    h2 = std::max(h2, algebra_norm(ctx.b_norm, sub(via_gamma, via_average)));

    // Linearity.
    const double k1 = trial.uniform(-3.0, 3.0);
    const double k2 = trial.uniform(-3.0, 3.0);
    const StepFunction combo = sf_add(sf_scale(k1, tuple[0]), sf_scale(k2, tuple[1 % arity]));
    const AlgebraElement lhs = theta(combo);
    const AlgebraElement rhs =
        add(scale(k1, theta(tuple[0])), scale(k2, theta(tuple[1 % arity])));
    lin = std::max(lin, algebra_norm(ctx.b_norm, sub(lhs, rhs)));

    // Bimodule law theta(a.f.b) = sigma(a) theta(f) b.
    const AlgebraElement a = random_element(ctx.A, trial);
    const AlgebraElement b = random_element(ctx.B, trial);
    const AlgebraElement acted = theta(module_action(a, tuple[0], b, ctx.sigma));
    const AlgebraElement direct = mul(mul(apply_hom(ctx.sigma, a), theta(tuple[0])), b);
    bimod = std::max(bimod, algebra_norm(ctx.b_norm, sub(acted, direct)));
  }
  report.add("H2: theta(gamma(f)) = frakA(theta(f_i))", h2, tol);
  report.add("linearity: theta(k1 f + k2 g)", lin, tol);
  report.add("bimodule: theta(a.f.b) = sigma(a) theta(f) b", bimod, tol);
  return report;
}

LawReport check_triple_laws(const SigmaContext& ctx, double tol) {
  ctx.validate();
  LawReport report;
  const auto& d = *ctx.domain;
  const double mu = d.total_measure();
  const std::size_t arity = std::size_t(1) << d.dim;

  // Step triple (S, 1_IA, gamma): N2 bound and N3 fixed point.
  const StepFunction one = constant_step(ctx.domain, unit_element(ctx.B));
  const double norm_one = step_norm(one, ctx.b_norm);
  report.add("N2(step): ||1_IA|| <= mu(IA)", std::max(0.0, norm_one - mu), tol * std::max(1.0, mu));
  const StepFunction reassembled = gamma_xi(std::vector<StepFunction>(arity, one));
  double fixed = 0.0;
  SplitRng probe(20240901);
  for (int t = 0; t < 64; ++t) {
    std::vector<double> x(d.dim);
    for (auto& v : x) v = probe.uniform(d.lo, d.hi);
    fixed = std::max(fixed, max_abs_diff(evaluate(reassembled, x), evaluate(one, x)));
  }
  report.add("N3(step): gamma((1_IA)^2^d) = 1_IA", fixed, tol);

  // Algebra triple (B, mu(IA) 1_B, frakA).
  const AlgebraElement v = scale(mu, unit_element(ctx.B));
  report.add("N2(algebra): ||mu(IA) 1_B|| <= mu(IA)",
             std::max(0.0, algebra_norm(ctx.b_norm, v) - mu), tol * std::max(1.0, mu));
  report.add("N3(algebra): frakA((v)^2^d) = v",
             algebra_norm(ctx.b_norm, sub(frakA(d, std::vector<AlgebraElement>(arity, v)), v)),
             tol);
  return report;
}

LawReport daniell_suite(const SigmaContext& ctx, int trials, SplitRng rng, double tol_i1,
                        double tol_i2, double i3_target, int i3_depth) {
  ctx.validate();
  LawReport report;

  // I1: linearity of T on random pairs.
  double i1 = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(static_cast<std::uint64_t>(t));
    const StepFunction h1 = random_step_function(ctx, trial);
    const StepFunction h2 = random_step_function(ctx, trial);
    const double k1 = trial.uniform(-3.0, 3.0);
    const double k2 = trial.uniform(-3.0, 3.0);
    const AlgebraElement lhs = integrate_step(sf_add(sf_scale(k1, h1), sf_scale(k2, h2)));
    const AlgebraElement rhs =
        add(scale(k1, integrate_step(h1)), scale(k2, integrate_step(h2)));
    i1 = std::max(i1, algebra_norm(ctx.b_norm, sub(lhs, rhs)));
  }
  report.add("I1: T(k1 h1 + k2 h2) = k1 T(h1) + k2 T(h2)", i1, tol_i1);

  // I2: the scalarized integrand lands in R^{>=0} 1_B.
  double off_unit = 0.0;
  double min_omega = 0.0;
  const std::vector<double>& unit_vec = ctx.B->unit;
  double unit_dot = 0.0;
  for (double c : unit_vec) unit_dot += c * c;
  for (int t = 0; t < trials; ++t) {
    SplitRng trial = rng.split(0x10000u + static_cast<std::uint64_t>(t));
    const StepFunction h = random_step_function(ctx, trial);
    StepFunction scalarized = zero_step(ctx.domain, ctx.B);
    for (const auto& [box, coeffs] : h.pieces) {
      const double bn = algebra_norm(ctx.b_norm, AlgebraElement{ctx.B, coeffs});
      std::vector<double> c(unit_vec);
      for (auto& vv : c) vv *= bn;
      scalarized.pieces.emplace_back(box, std::move(c));
    }
    const AlgebraElement r = integrate_step(scalarized);
    double dot = 0.0;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) dot += r.coeffs[i] * unit_vec[i];
    const double omega = dot / unit_dot;
    min_omega = std::min(min_omega, omega);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
      off_unit = std::max(off_unit, std::abs(r.coeffs[i] - omega * unit_vec[i]));
  }
  report.add("I2: off-unit component of T(||h|| 1_B)", off_unit, tol_i2);
  report.add("I2: unit coefficient >= 0", std::max(0.0, -min_omega), tol_i2);

  // I3: shrinking supports 1_{[lo, lo + 2^-t len)} b with ||b||_{B,p} = 1, so
  // the integral norms decay as 2^-t exactly.
  const auto& d = *ctx.domain;
  const AlgebraElement b = basis_element(ctx.B, 0);
  double prev = std::numeric_limits<double>::infinity();
  double last = prev;
  bool monotone = true;
  for (int t = 1; t <= i3_depth; ++t) {
    StepFunction h = zero_step(ctx.domain, ctx.B);
    Box box;
    box.axes.reserve(d.dim);
    const double width = std::pow(0.5, t) * d.length();
    box.axes.push_back(AxisInterval{d.lo, d.lo + width, true, false});
    for (int k = 1; k < d.dim; ++k) box.axes.push_back(AxisInterval{d.lo, d.hi, true, true});
    h.pieces.emplace_back(std::move(box), b.coeffs);
    const double norm = algebra_norm(ctx.b_norm, integrate_step(h));
    if (norm > prev) monotone = false;
    prev = norm;
    last = norm;
  }
  report.add("I3: ||T(h_t)|| decreasing", monotone ? 0.0 : 1.0, 0.5, "geometric shrink fixture");
  report.add("I3: ||T(h_" + std::to_string(i3_depth) + ")|| below target", last, i3_target);
  return report;
}

LawReport operator_norm_check(const SigmaContext& ctx, int u_max, int trials, SplitRng rng,
                              double upper_slack, double witness_slack) {
  ctx.validate();
  LawReport report;
  const auto& d = *ctx.domain;
  const double mu = d.total_measure();
  FunctionHandle unit_handle{ctx.B, [&](const std::vector<double>&) { return ctx.B->unit; }};

  for (int u = 0; u <= u_max; ++u) {
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
      SplitRng trial = rng.split((static_cast<std::uint64_t>(u) << 32) + t);
      StepFunction f = sample_to_Eu(
          FunctionHandle{ctx.B,
                         [&](const std::vector<double>&) {
                           return random_element(ctx.B, trial).coeffs;
                         }},
          ctx.domain, u);
      const double denom = eu_norm(f, ctx.b_norm);
      if (denom == 0.0) continue;
      best = std::max(best, algebra_norm(ctx.b_norm, integrate_step(f)) / denom);
    }
    // The constant witness attains the bound exactly.
    StepFunction witness = sample_to_Eu(unit_handle, ctx.domain, u);
    const double wnorm = eu_norm(witness, ctx.b_norm);
    const double wratio = algebra_norm(ctx.b_norm, integrate_step(witness)) / wnorm;
    best = std::max(best, wratio);
    report.add("opnorm(E_" + std::to_string(u) + "): estimate <= mu(IA)(1+slack)",
               std::max(0.0, best - mu * (1.0 + upper_slack)), 0.0);
    report.add_at_least("opnorm(E_" + std::to_string(u) + "): witness >= mu(IA)(1-slack)", best,
                        mu * (1.0 - witness_slack));
  }
  return report;
}

}  // namespace qint
