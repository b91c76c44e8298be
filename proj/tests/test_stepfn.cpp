#include <cmath>

#include "doctest.h"
#include "qint/approx.hpp"
#include "qint/errors.hpp"
#include "qint/fixtures.hpp"
#include "qint/rng.hpp"

using namespace qint;

namespace {

// 1-D step function over the scalar reals: value v on [lo,hi) (closed hi on
// request).
StepFunction scalar_piece(const DomainPtr& d, double lo, double hi, double v,
                          bool hi_closed = false) {
  StepFunction f = zero_step(d, scalar_real_algebra());
  Box box;
  box.axes.push_back(AxisInterval{lo, hi, true, hi_closed});
  f.pieces.emplace_back(box, std::vector<double>{v});
  return f;
}

double eval1(const StepFunction& f, double x) { return evaluate(f, {x}).coeffs[0]; }

}  // namespace

TEST_SUITE("stepfn") {

TEST_CASE("evaluate respects endpoint forms") {
  const DomainPtr d = make_domain(1);
  const StepFunction f = scalar_piece(d, 0.0, 0.5, 7.0);
  CHECK(eval1(f, 0.25) == 7.0);
  CHECK(eval1(f, 0.5) == 0.0);  // open upper endpoint
  CHECK(eval1(f, 0.0) == 7.0);
  CHECK_THROWS_WITH_AS(evaluate(f, {1.5}), doctest::Contains("OutOfDomain"), Error);
}

TEST_CASE("exactly one piece fires at shared boundaries") {
  const DomainPtr d = make_domain(1);
  StepFunction f = scalar_piece(d, 0.0, 0.5, 1.0);
  Box upper;
  upper.axes.push_back(AxisInterval{0.5, 1.0, true, true});
  f.pieces.emplace_back(upper, std::vector<double>{2.0});
  check_disjoint_pieces(f);
  // Exhaustive boundary scan: count containments directly.
  for (double x : {0.0, 0.25, 0.4999999999, 0.5, 0.5000000001, 0.75, 1.0}) {
    int hits = 0;
    for (const auto& [box, coeffs] : f.pieces) {
      (void)coeffs;
      if (box.contains({x})) ++hits;
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("add: zero identity, overlap decomposition, additive inverse") {
  const DomainPtr d = make_domain(1);
  const StepFunction f = scalar_piece(d, 0.0, 2.0 / 3.0, 3.0);
  const StepFunction zero = zero_step(d, scalar_real_algebra());
  SplitRng rng(3, 0);

  const StepFunction fz = sf_add(f, zero);
  for (int t = 0; t < 100; ++t) {
    const double x = rng.uniform();
    CHECK(eval1(fz, x) == eval1(f, x));
  }

  // b1 on [0,2/3) plus b2 on [1/3,1]: frozen three-piece decomposition.
  StepFunction g = scalar_piece(d, 1.0 / 3.0, 1.0, 4.0, true);
  const StepFunction sum = sf_add(f, g);
  CHECK(sum.pieces.size() == 3);
  check_disjoint_pieces(sum);
  CHECK(eval1(sum, 0.1) == 3.0);
  CHECK(eval1(sum, 0.5) == 7.0);
  CHECK(eval1(sum, 0.9) == 4.0);
  CHECK(eval1(sum, 1.0) == 4.0);

  const StepFunction cancel = sf_add(f, sf_scale(-1.0, f));
  for (int t = 0; t < 1000; ++t) CHECK(eval1(cancel, rng.uniform()) == 0.0);
}

TEST_CASE("pointwise evaluation of sums matches everywhere, multi-dimensional") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(9, 0);
  for (int t = 0; t < 50; ++t) {
    SplitRng trial = rng.split(t);
    const StepFunction f = random_step_function(ctx, trial);
    const StepFunction g = random_step_function(ctx, trial);
    const StepFunction sum = sf_add(f, g);
    check_disjoint_pieces(sum);
    for (int probe = 0; probe < 20; ++probe) {
      const std::vector<double> x{trial.uniform(), trial.uniform()};
      CHECK(max_abs_diff(evaluate(sum, x), add(evaluate(f, x), evaluate(g, x))) < 1e-12);
    }
  }
}

TEST_CASE("step_norm values") {
  // ||1_B 1_IA||_p = mu(IA) whenever ||1_B|| = 1: scalar base, domain [0,2]^2.
  const DomainPtr d2 = make_domain(2, 0.0, 2.0, 1.0);
  const StepFunction one = constant_step(d2, unit_element(scalar_real_algebra()));
  for (double p : {1.0, 2.0, 3.0})
    CHECK(step_norm(one, default_pnorm(scalar_real_algebra(), p)) == doctest::Approx(4.0));

  CHECK(step_norm(zero_step(d2, scalar_real_algebra()),
                  default_pnorm(scalar_real_algebra(), 2.0)) == 0.0);

  const DomainPtr d1 = make_domain(1);
  StepFunction two_four = scalar_piece(d1, 0.0, 0.5, 2.0);
  Box upper;
  upper.axes.push_back(AxisInterval{0.5, 1.0, true, true});
  two_four.pieces.emplace_back(upper, std::vector<double>{4.0});
  CHECK(step_norm(two_four, default_pnorm(scalar_real_algebra(), 1.0)) == doctest::Approx(3.0));
}

TEST_CASE("module action: units fix f, kernel elements kill it, 3M holds") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(13, 0);
  const StepFunction f = random_step_function(ctx, rng);

  const StepFunction fixed =
      module_action(unit_element(ctx.A), f, unit_element(ctx.B), ctx.sigma);
  const StepFunction killed = module_action(
      basis_element(example7_A(), example7_A()->index_of("x1")), f, unit_element(ctx.B),
      example7_sigma());
  for (int probe = 0; probe < 50; ++probe) {
    const std::vector<double> x{rng.uniform(), rng.uniform()};
    CHECK(max_abs_diff(evaluate(fixed, x), evaluate(f, x)) == 0.0);
    CHECK(max_abs(evaluate(killed, x)) == 0.0);
  }

  // (a1 a2).f = a1.(a2.f) through two code paths, multiplicative sigma.
  for (int t = 0; t < 100; ++t) {
    SplitRng trial = rng.split(0x300 + t);
    const AlgebraElement a1 = random_element(ctx.A, trial);
    const AlgebraElement a2 = random_element(ctx.A, trial);
    const StepFunction lhs = module_action(mul(a1, a2), f, unit_element(ctx.B), ctx.sigma);
    const StepFunction rhs = module_action(
        a1, module_action(a2, f, unit_element(ctx.B), ctx.sigma), unit_element(ctx.B), ctx.sigma);
    const std::vector<double> x{trial.uniform(), trial.uniform()};
    CHECK(max_abs_diff(evaluate(lhs, x), evaluate(rhs, x)) < 1e-12);
  }
}

TEST_CASE("gamma in one dimension is the two-sided dilation") {
  const DomainPtr d = make_domain(1);
  SigmaContext ctx = scalar_context_1d();
  SplitRng rng(21, 0);
  for (int t = 0; t < 50; ++t) {
    SplitRng trial = rng.split(t);
    const StepFunction f = random_step_function(ctx, trial);
    const StepFunction g = random_step_function(ctx, trial);
    const StepFunction joined = gamma_xi({f, g});
    for (int probe = 0; probe < 40; ++probe) {
      const double x = trial.uniform();
      const double expected = x < 0.5 ? eval1(f, 2 * x) : eval1(g, 2 * x - 1);
      CHECK(eval1(joined, x) == doctest::Approx(expected));
    }
    CHECK(eval1(joined, 1.0) == eval1(g, 1.0));  // closed top face
  }
  (void)d;
}

TEST_CASE("gamma of unit tuples is the unit function") {
  for (int dim : {1, 2, 3}) {
    SigmaContext ctx = identity_context(example7_B(), dim);
    const StepFunction one = constant_step(ctx.domain, unit_element(ctx.B));
    const StepFunction joined =
        gamma_xi(std::vector<StepFunction>(std::size_t(1) << dim, one));
    SplitRng rng(41, dim);
    for (int probe = 0; probe < 100; ++probe) {
      std::vector<double> x(dim);
      for (auto& v : x) v = rng.uniform();
      CHECK(max_abs_diff(evaluate(joined, x), unit_element(ctx.B)) == 0.0);
    }
    std::vector<double> top(dim, 1.0);
    CHECK(max_abs_diff(evaluate(joined, top), unit_element(ctx.B)) == 0.0);
  }
}

TEST_CASE("gamma of four constants is the four-quadrant function") {
  SigmaContext ctx = scalar_context_1d();
  const DomainPtr d2 = make_domain(2);
  const AlgebraPtr r = scalar_real_algebra();
  auto constant = [&](double v) {
    return constant_step(d2, AlgebraElement{r, {v}});
  };
  // Input order: signature bit k selects the upper half of axis k, axis 0
  // fastest: (lo,lo), (hi,lo), (lo,hi), (hi,hi).
  const StepFunction quad = gamma_xi({constant(1), constant(2), constant(3), constant(4)});
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    for (double y : {0.2, 0.4, 0.7, 0.8}) {
      const double expected = (x < 0.5 ? (y < 0.5 ? 1 : 3) : (y < 0.5 ? 2 : 4));
      CHECK(evaluate(quad, {x, y}).coeffs[0] == expected);
    }
  }
  (void)ctx;
}

TEST_CASE("gamma inverse: round trip, unit function, straddling piece") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(55, 0);

  // Round trip through an aligned function.
  FunctionHandle h{ctx.B, [&](const std::vector<double>&) {
                     return random_element(ctx.B, rng).coeffs;
                   }};
  const StepFunction aligned = sample_to_Eu(h, ctx.domain, 2);
  const std::vector<StepFunction> parts = gamma_xi_inverse(aligned);
  REQUIRE(parts.size() == 4);
  const StepFunction rebuilt = gamma_xi(parts);
  for (int probe = 0; probe < 200; ++probe) {
    std::vector<double> x{rng.uniform(), rng.uniform()};
    CHECK(max_abs_diff(evaluate(rebuilt, x), evaluate(aligned, x)) < 1e-12);
  }
  CHECK(max_abs_diff(evaluate(rebuilt, {1.0, 1.0}), evaluate(aligned, {1.0, 1.0})) < 1e-12);

  // Inverse of the constant unit function: 2^d unit functions, pointwise.
  const StepFunction one = constant_step(ctx.domain, unit_element(ctx.B));
  for (const auto& part : gamma_xi_inverse(gamma_xi({one, one, one, one}))) {
    for (int probe = 0; probe < 50; ++probe) {
      std::vector<double> x{rng.uniform(), rng.uniform()};
      CHECK(max_abs_diff(evaluate(part, x), unit_element(ctx.B)) == 0.0);
    }
    CHECK(max_abs_diff(evaluate(part, {1.0, 1.0}), unit_element(ctx.B)) == 0.0);
  }

  // Four constants recovered exactly.
  const AlgebraPtr r = scalar_real_algebra();
  const DomainPtr d2 = make_domain(2);
  auto constant = [&](double v) { return constant_step(d2, AlgebraElement{r, {v}}); };
  const StepFunction quad = gamma_xi({constant(1), constant(2), constant(3), constant(4)});
  const auto back = gamma_xi_inverse(quad);
  for (std::size_t i = 0; i < 4; ++i) {
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> x{rng.uniform(), rng.uniform()};
      CHECK(evaluate(back[i], x).coeffs[0] == double(i + 1));
    }
  }

  // A piece across the split point is rejected.
  StepFunction straddling = zero_step(make_domain(1), r);
  Box box;
  box.axes.push_back(AxisInterval{0.25, 0.75, true, false});
  straddling.pieces.emplace_back(box, std::vector<double>{1.0});
  CHECK_THROWS_WITH_AS(gamma_xi_inverse(straddling), doctest::Contains("NotAligned"), Error);
}

TEST_CASE("sample_to_Eu: constants, level zero, midpoint samples of x") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  const AlgebraElement b = basis_element(ctx.B, 3);
  FunctionHandle constant{ctx.B, [&](const std::vector<double>&) { return b.coeffs; }};
  SplitRng rng(61, 0);
  for (int u : {0, 1, 3}) {
    const StepFunction f = sample_to_Eu(constant, ctx.domain, u);
    CHECK(f.pieces.size() == std::size_t(1) << (2 * u));
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<double> x{rng.uniform(), rng.uniform()};
      CHECK(max_abs_diff(evaluate(f, x), b) == 0.0);
    }
  }

  const StepFunction at0 = sample_to_Eu(constant, ctx.domain, 0);
  CHECK(at0.pieces.size() == 1);

  // 1-D identity at level 2, midpoint rule: heights 1/8, 3/8, 5/8, 7/8.
  const StepFunction staircase =
      sample_to_Eu(scalar_handle([](double x) { return x; }), make_domain(1), 2);
  REQUIRE(staircase.pieces.size() == 4);
  const std::vector<double> expected{0.125, 0.375, 0.625, 0.875};
  for (int i = 0; i < 4; ++i) CHECK(staircase.pieces[i].second[0] == expected[i]);

  // Corner rule samples the lower corner instead.
  const StepFunction corners = sample_to_Eu(scalar_handle([](double x) { return x; }),
                                            make_domain(1), 2, SampleRule::corner);
  const std::vector<double> corner_expected{0.0, 0.25, 0.5, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(corners.pieces[i].second[0] == corner_expected[i]);

  CHECK_THROWS_WITH_AS(sample_to_Eu(constant, ctx.domain, 15, SampleRule::midpoint, 1 << 20),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("bimodule laws hold pointwise for random data") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(71, 0);
  for (int t = 0; t < 200; ++t) {
    SplitRng trial = rng.split(t);
    const StepFunction f = random_step_function(ctx, trial);
    const AlgebraElement a = random_element(ctx.A, trial);
    const AlgebraElement b1 = random_element(ctx.B, trial);
    const AlgebraElement b2 = random_element(ctx.B, trial);
    const std::vector<double> x{trial.uniform(), trial.uniform()};
    const AlgebraElement oneA = unit_element(ctx.A);
    const AlgebraElement oneB = unit_element(ctx.B);

    // M1: f.(b1+b2) = f.b1 + f.b2 under evaluation.
    CHECK(max_abs_diff(
              evaluate(module_action(oneA, f, add(b1, b2), ctx.sigma), x),
              add(evaluate(module_action(oneA, f, b1, ctx.sigma), x),
                  evaluate(module_action(oneA, f, b2, ctx.sigma), x))) < 1e-12);
    // M5-style scalar compatibility.
    const double lambda = trial.uniform(-2.0, 2.0);
    CHECK(max_abs_diff(
              evaluate(module_action(oneA, f, scale(lambda, b1), ctx.sigma), x),
              scale(lambda, evaluate(module_action(oneA, f, b1, ctx.sigma), x))) < 1e-12);
    // Compatibility (a.f).b = a.(f.b).
    CHECK(max_abs_diff(
              evaluate(module_action(oneA, module_action(a, f, oneB, ctx.sigma), b1, ctx.sigma),
                       x),
              evaluate(module_action(a, module_action(oneA, f, b1, ctx.sigma), oneB, ctx.sigma),
                       x)) < 1e-12);
  }
}

TEST_CASE("p=1 step norm is split invariant; p=2 is representation dependent") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(81, 0);
  const PNormSpec p1 = default_pnorm(ctx.B, 1.0);
  for (int t = 0; t < 200; ++t) {
    SplitRng trial = rng.split(t);
    StepFunction f = random_step_function(ctx, trial);
    const double before = step_norm(f, p1);
    if (f.pieces.empty()) continue;
    const int idx = trial.uniform_int(static_cast<int>(f.pieces.size()));
    auto [box, coeffs] = f.pieces[idx];
    const int axis = trial.uniform_int(2);
    const AxisInterval ax = box.axes[axis];
    const double cut = trial.uniform(ax.lo, ax.hi);
    if (!(cut > ax.lo && cut < ax.hi)) continue;
    Box left = box, right = box;
    left.axes[axis] = AxisInterval{ax.lo, cut, ax.lo_closed, false};
    right.axes[axis] = AxisInterval{cut, ax.hi, true, ax.hi_closed};
    f.pieces.erase(f.pieces.begin() + idx);
    f.pieces.emplace_back(left, coeffs);
    f.pieces.emplace_back(right, coeffs);
    CHECK(std::abs(step_norm(f, p1) - before) <= 1e-12);
  }

  // A concrete p=2 counterexample: halving one unit piece changes the norm.
  const DomainPtr d1 = make_domain(1);
  StepFunction whole = scalar_piece(d1, 0.0, 1.0, 1.0, true);
  StepFunction halves = scalar_piece(d1, 0.0, 0.5, 1.0);
  Box upper;
  upper.axes.push_back(AxisInterval{0.5, 1.0, true, true});
  halves.pieces.emplace_back(upper, std::vector<double>{1.0});
  const PNormSpec p2 = default_pnorm(scalar_real_algebra(), 2.0);
  CHECK(step_norm(whole, p2) == doctest::Approx(1.0));
  CHECK(step_norm(halves, p2) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("gamma linearity and gamma bimodule property") {
  SigmaContext ctx = identity_context(example7_B(), 1);
  SplitRng rng(91, 0);
  for (int t = 0; t < 100; ++t) {
    SplitRng trial = rng.split(t);
    std::vector<StepFunction> fs{random_step_function(ctx, trial),
                                 random_step_function(ctx, trial)};
    std::vector<StepFunction> gs{random_step_function(ctx, trial),
                                 random_step_function(ctx, trial)};
    const double alpha = trial.uniform(-2, 2), beta = trial.uniform(-2, 2);
    const StepFunction lhs = gamma_xi(
        {sf_add(sf_scale(alpha, fs[0]), sf_scale(beta, gs[0])),
         sf_add(sf_scale(alpha, fs[1]), sf_scale(beta, gs[1]))});
    const StepFunction rhs =
        sf_add(sf_scale(alpha, gamma_xi(fs)), sf_scale(beta, gamma_xi(gs)));
    const AlgebraElement a = random_element(ctx.A, trial);
    const AlgebraElement b = random_element(ctx.B, trial);
    const StepFunction lhs_b = gamma_xi({module_action(a, fs[0], b, ctx.sigma),
                                         module_action(a, fs[1], b, ctx.sigma)});
    const StepFunction rhs_b = module_action(a, gamma_xi(fs), b, ctx.sigma);
    for (int probe = 0; probe < 20; ++probe) {
      const std::vector<double> x{trial.uniform()};
      CHECK(max_abs_diff(evaluate(lhs, x), evaluate(rhs, x)) < 1e-12);
      CHECK(max_abs_diff(evaluate(lhs_b, x), evaluate(rhs_b, x)) < 1e-12);
    }
  }
}

TEST_CASE("weighted direct-sum norm law, two routes, off-center split") {
  const AlgebraPtr b = example7_B();
  SigmaContext ctx = make_context(b, b, identity_hom(b), make_domain(2, 0.0, 1.0, 0.4), 1.0);
  SplitRng rng(95, 0);
  for (double p : {1.0, 2.0, 3.0}) {
    const PNormSpec spec = default_pnorm(b, p);
    for (int t = 0; t < 50; ++t) {
      SplitRng trial = rng.split(static_cast<std::uint64_t>(p * 100) + t);
      std::vector<StepFunction> fs;
      for (int i = 0; i < 4; ++i) fs.push_back(random_step_function(ctx, trial));
      const double direct = step_norm(gamma_xi(fs), spec);
      double acc = 0.0;
      const double mu = ctx.domain->total_measure();
      for (unsigned sig = 0; sig < 4; ++sig)
        acc += std::pow(sub_box_measure(*ctx.domain, sig) / mu * step_norm(fs[sig], spec), p);
      CHECK(std::abs(direct - std::pow(acc, 1.0 / p)) <= 1e-9);
    }
  }
}

TEST_CASE("N2: equality on multiplicative subcases, bounded inflation in general") {
  SplitRng rng(99, 0);

  // Scalar base: exact equality for every p.
  SigmaContext scal = scalar_context_1d();
  for (double p : {1.0, 2.0}) {
    SigmaContext ctx = scalar_context_1d(p);
    for (int t = 0; t < 200; ++t) {
      SplitRng trial = rng.split(static_cast<std::uint64_t>(p * 1000) + t);
      const StepFunction f = random_step_function(ctx, trial);
      const AlgebraElement a = random_element(ctx.A, trial);
      const AlgebraElement b = random_element(ctx.B, trial);
      const double lhs = step_norm(module_action(a, f, b, ctx.sigma), ctx.b_norm);
      const double rhs = seminorm_sigma(ctx.sigma, ctx.b_norm, a) * step_norm(f, ctx.b_norm) *
                         algebra_norm(ctx.b_norm, b);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
  (void)scal;

  // Realified complex scalars at p = 2: the 2-norm is the modulus, which is
  // multiplicative. (At p = 1 the same identity fails; see below.)
  SigmaContext cplx = identity_context(complex_realified(), 1, 0.0, 1.0, 0.5, 2.0);
  for (int t = 0; t < 200; ++t) {
    SplitRng trial = rng.split(0xC0FFEE + t);
    const StepFunction f = random_step_function(cplx, trial);
    const AlgebraElement a = random_element(cplx.A, trial);
    const AlgebraElement b = random_element(cplx.B, trial);
    const double lhs = step_norm(module_action(a, f, b, cplx.sigma), cplx.b_norm);
    const double rhs = seminorm_sigma(cplx.sigma, cplx.b_norm, a) * step_norm(f, cplx.b_norm) *
                       algebra_norm(cplx.b_norm, b);
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }

  // p=1 realified complex counterexample: (1+i)(1+i) = 2i has 1-norm 2, not 4.
  {
    SigmaContext c1 = identity_context(complex_realified(), 1, 0.0, 1.0, 0.5, 1.0);
    const AlgebraElement onePlusI{c1.B, {1.0, 1.0}};
    const StepFunction f = constant_step(c1.domain, onePlusI);
    const double lhs =
        step_norm(module_action(onePlusI, f, unit_element(c1.B), c1.sigma), c1.b_norm);
    const double rhs = seminorm_sigma(c1.sigma, c1.b_norm, onePlusI) * step_norm(f, c1.b_norm);
    CHECK(lhs == doctest::Approx(2.0));
    CHECK(rhs == doctest::Approx(4.0));
  }

  // General B: scalar multiples of the unit give equality; random factors
  // stay below the basis-product inflation bound.
  SigmaContext ctx = identity_context(example7_B(), 2);
  double inflation = 0.0;
  for (int i = 0; i < ctx.B->dim(); ++i)
    for (int j = 0; j < ctx.B->dim(); ++j)
      inflation = std::max(inflation,
                           algebra_norm(ctx.b_norm, AlgebraElement{ctx.B, ctx.B->mult_table[i][j]}));
  for (int t = 0; t < 200; ++t) {
    SplitRng trial = rng.split(0xBEEF + t);
    const StepFunction f = random_step_function(ctx, trial);
    const double alpha = trial.uniform(-2, 2), beta = trial.uniform(-2, 2);
    const AlgebraElement a = scale(alpha, unit_element(ctx.A));
    const AlgebraElement b = scale(beta, unit_element(ctx.B));
    const double lhs = step_norm(module_action(a, f, b, ctx.sigma), ctx.b_norm);
    CHECK(std::abs(lhs - std::abs(alpha) * std::abs(beta) * step_norm(f, ctx.b_norm)) <= 1e-9);

    const AlgebraElement ra = random_element(ctx.A, trial);
    const AlgebraElement rb = random_element(ctx.B, trial);
    const double general = step_norm(module_action(ra, f, rb, ctx.sigma), ctx.b_norm);
    const double bound = inflation * inflation *
                         seminorm_sigma(ctx.sigma, ctx.b_norm, ra) * step_norm(f, ctx.b_norm) *
                         algebra_norm(ctx.b_norm, rb);
    CHECK(general <= bound + 1e-9);
  }
}

TEST_CASE("measure semantics: product lengths, additivity, endpoint independence") {
  const DomainBoxSpec d{3, 0.0, 2.0, 1.0};
  CHECK(d.total_measure() == 8.0);

  Box box;
  box.axes = {AxisInterval{0.0, 1.5, true, false}, AxisInterval{0.5, 2.0, false, true},
              AxisInterval{0.25, 0.75, false, false}};
  CHECK(box.measure() == doctest::Approx(1.5 * 1.5 * 0.5));

  // The four endpoint forms carry the same measure.
  for (bool lo_closed : {false, true})
    for (bool hi_closed : {false, true}) {
      Box variant = box;
      variant.axes[1].lo_closed = lo_closed;
      variant.axes[1].hi_closed = hi_closed;
      CHECK(variant.measure() == box.measure());
    }

  // Finite additivity across an axis-aligned split.
  SplitRng rng(201, 0);
  for (int t = 0; t < 200; ++t) {
    const double cut = rng.uniform(box.axes[0].lo, box.axes[0].hi);
    Box left = box, right = box;
    left.axes[0].hi = cut;
    right.axes[0].lo = cut;
    CHECK(left.measure() + right.measure() == doctest::Approx(box.measure()).epsilon(1e-14));
  }
}

TEST_CASE("box subtraction fuzz: disjointness, measure, membership") {
  SplitRng rng(123, 0);
  for (int t = 0; t < 300; ++t) {
    SplitRng trial = rng.split(t);
    const int dim = 1 + trial.uniform_int(3);
    auto random_box = [&](SplitRng& r) {
      Box box;
      for (int k = 0; k < dim; ++k) {
        double a = r.uniform(), b = r.uniform();
        if (a > b) std::swap(a, b);
        box.axes.push_back(AxisInterval{a, b, r.uniform() < 0.5, r.uniform() < 0.5});
      }
      return box;
    };
    const Box a = random_box(trial);
    const Box b = random_box(trial);
    const auto parts = subtract(a, b);

    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        CHECK(boxes_disjoint(parts[i], parts[j]));

    double covered = 0.0;
    for (const auto& p : parts) covered += p.measure();
    const auto mid = intersect(a, b);
    const double expected = a.measure() - (mid ? mid->measure() : 0.0);
    CHECK(covered == doctest::Approx(expected).epsilon(1e-12));

    // Membership oracle at random points and at box corners.
    std::vector<std::vector<double>> probes;
    for (int p = 0; p < 20; ++p) {
      std::vector<double> x(dim);
      for (auto& v : x) v = trial.uniform();
      probes.push_back(x);
    }
    for (const auto& ax : {a, b}) {
      std::vector<double> corner(dim);
      for (int k = 0; k < dim; ++k) corner[k] = ax.axes[k].lo;
      probes.push_back(corner);
      for (int k = 0; k < dim; ++k) corner[k] = ax.axes[k].hi;
      probes.push_back(corner);
    }
    for (const auto& x : probes) {
      const bool in_diff = a.contains(x) && !b.contains(x);
      int hits = 0;
      for (const auto& p : parts)
        if (p.contains(x)) ++hits;
      CHECK(hits == (in_diff ? 1 : 0));
    }
  }
}

TEST_CASE("addition is associative and commutative under evaluation") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  SplitRng rng(131, 0);
  for (int t = 0; t < 50; ++t) {
    SplitRng trial = rng.split(t);
    const StepFunction f = random_step_function(ctx, trial);
    const StepFunction g = random_step_function(ctx, trial);
    const StepFunction h = random_step_function(ctx, trial);
    const StepFunction left = sf_add(sf_add(f, g), h);
    const StepFunction right = sf_add(f, sf_add(g, h));
    const StepFunction swapped = sf_add(g, f);
    for (int probe = 0; probe < 20; ++probe) {
      const std::vector<double> x{trial.uniform(), trial.uniform()};
      CHECK(max_abs_diff(evaluate(left, x), evaluate(right, x)) < 1e-12);
      CHECK(max_abs_diff(evaluate(sf_add(f, g), x), evaluate(swapped, x)) < 1e-12);
    }
  }
}

TEST_CASE("axis cells tile the interval exactly at every level") {
  for (double xi : {0.5, 0.4, 0.7}) {
    const DomainBoxSpec d{1, 0.0, 1.0, xi};
    for (int u = 0; u <= 6; ++u) {
      const auto cells = axis_cells(d, u);
      REQUIRE(cells.size() == std::size_t(1) << u);
      CHECK(cells.front().lo == d.lo);
      CHECK(cells.back().hi == d.hi);
      CHECK(cells.back().hi_closed);
      double total = 0.0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        total += cells[i].length();
        if (i + 1 < cells.size()) {
          CHECK(cells[i].hi == cells[i + 1].lo);  // exact tiling, no gaps
          CHECK_FALSE(cells[i].hi_closed);
        }
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("errors: arity, domain mismatch, algebra mismatch") {
  SigmaContext ctx = identity_context(example7_B(), 2);
  const StepFunction one = constant_step(ctx.domain, unit_element(ctx.B));
  CHECK_THROWS_WITH_AS(gamma_xi({one, one}), doctest::Contains("ArityMismatch"), Error);
  SigmaContext other = identity_context(example7_B(), 2, 0.0, 2.0);
  CHECK_THROWS_WITH_AS(sf_add(one, constant_step(other.domain, unit_element(other.B))),
                       doctest::Contains("DomainMismatch"), Error);
  CHECK_THROWS_WITH_AS(
      module_action(unit_element(example7_B()), one, unit_element(ctx.B), example7_sigma()),
      doctest::Contains("AlgebraMismatch"), Error);
}

}  // TEST_SUITE
