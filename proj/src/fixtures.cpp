#include "qint/fixtures.hpp"

#include "qint/approx.hpp"

#include <cmath>

#include "qint/errors.hpp"

namespace qint {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

WeightQuiver example7_quiver_A() {
  WeightQuiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", "1", "2"}, {"a'", "1", "2"}, {"b", "2", "3"}, {"b'", "2", "3"},
              {"c", "3", "1"}, {"c'", "3", "1"}, {"x1", "1", "1"}, {"x2", "2", "2"}};
  q.weights = {{"1", 2}, {"2", 2}, {"3", 1}};
  return q;
}

WeightQuiver example7_quiver_B() {
  WeightQuiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}};
  return q;
}

RewriteSystem example7_rules(const WeightQuiver& q) {
  RewriteSystem rw;
  auto path = [&](std::initializer_list<const char*> ids) {
    return Path::of(q, std::vector<std::string>(ids.begin(), ids.end()));
  };
  auto rule_to = [&](std::initializer_list<const char*> lhs, const Path& rhs, double coeff) {
    rw.rules.push_back(RewriteRule{path(lhs), {{rhs, coeff}}});
  };
  auto rule_zero = [&](std::initializer_list<const char*> lhs) {
    rw.rules.push_back(RewriteRule{path(lhs), {}});
  };
  rule_to({"x1", "x1"}, Path::trivial("1"), -1.0);
  rule_to({"x2", "x2"}, Path::trivial("2"), -1.0);
  rule_to({"x1", "a"}, path({"a'"}), 1.0);
  rule_to({"x1", "a'"}, path({"a"}), -1.0);
  rule_to({"a", "x2"}, path({"a'"}), 1.0);
  rule_to({"a'", "x2"}, path({"a"}), -1.0);
  rule_to({"x2", "b"}, path({"b'"}), 1.0);
  rule_to({"x2", "b'"}, path({"b"}), -1.0);
  rule_to({"c", "x1"}, path({"c'"}), 1.0);
  rule_to({"c'", "x1"}, path({"c"}), -1.0);
  for (auto lhs : std::initializer_list<std::initializer_list<const char*>>{
           {"a", "b"}, {"a", "b'"}, {"a'", "b"}, {"a'", "b'"},
           {"b", "c"}, {"b", "c'"}, {"b'", "c"}, {"b'", "c'"},
           {"c", "a"}, {"c", "a'"}, {"c'", "a"}, {"c'", "a'"}})
    rule_zero(lhs);
  rw.normal_form_basis = {Path::trivial("1"), path({"x1"}), Path::trivial("2"), path({"x2"}),
                          Path::trivial("3"), path({"a"}),  path({"a'"}),      path({"b"}),
                          path({"b'"}),      path({"c"}),  path({"c'"})};
  return rw;
}

}  // namespace

AlgebraPtr example7_A() {
  static const AlgebraPtr alg = [] {
    const WeightQuiver q = example7_quiver_A();
    return algebra_from_rewrite_system(q, example7_rules(q), 10000, "example7-A");
  }();
  return alg;
}

AlgebraPtr example7_B() {
  static const AlgebraPtr alg = [] {
    const WeightQuiver q = example7_quiver_B();
    const std::vector<Path> relations = {Path::of(q, {"a", "b"}), Path::of(q, {"b", "c"}),
                                         Path::of(q, {"c", "a"})};
    return algebra_from_admissible_quiver(q, relations, 2, "example7-B");
  }();
  return alg;
}

AlgebraHom example7_sigma() {
  const AlgebraPtr A = example7_A();
  const AlgebraPtr B = example7_B();
  AlgebraHom h = zero_hom(A, B);
  for (const char* label : {"e1", "e2", "e3", "a", "b", "c"}) {
    const int row = B->index_of(label);
    const int col = A->index_of(label);
    h.matrix[row][col] = 1.0;
  }
  return h;
}

AlgebraPtr corrupted_table_fixture() {
  StructureConstantAlgebra alg = *example7_A();
  alg.name = "corrupted-table";
  const int i = alg.index_of("a");
  const int j = alg.index_of("x2");
  alg.mult_table[i][j][alg.index_of("b")] += 1e-3;
  return make_algebra(std::move(alg));
}

AlgebraPtr coordinate_algebra(int n, std::string name) {
  if (n < 1) fail("InvalidInput", "coordinate algebra needs n >= 1");
  StructureConstantAlgebra alg;
  alg.name = name.empty() ? "R^" + std::to_string(n) : std::move(name);
  for (int i = 0; i < n; ++i) alg.basis_labels.push_back("e" + std::to_string(i + 1));
  alg.mult_table.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i) alg.mult_table[i][i][i] = 1.0;
  alg.unit.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    alg.idempotents.push_back(std::move(v));
  }
  return make_algebra(std::move(alg));
}

AlgebraPtr complex_realified() {
  static const AlgebraPtr alg = [] {
    WeightQuiver q;
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}};
    RewriteSystem rw;
    rw.rules.push_back(RewriteRule{Path::of(q, {"x", "x"}), {{Path::trivial("1"), -1.0}}});
    rw.normal_form_basis = {Path::trivial("1"), Path::of(q, {"x"})};
    return algebra_from_rewrite_system(q, rw, 100, "C-realified");
  }();
  return alg;
}

SigmaContext example7_context(double p) {
  return make_context(example7_A(), example7_B(), example7_sigma(),
                      make_domain(example7_A()->dim()), p);
}

SigmaContext scalar_context_1d(double p) {
  const AlgebraPtr R = scalar_real_algebra();
  return make_context(R, R, identity_hom(R), make_domain(1), p);
}

SigmaContext identity_context(const AlgebraPtr& b, int dim, double lo, double hi, double xi,
                              double p) {
  return make_context(b, b, identity_hom(b), make_domain(dim, lo, hi, xi), p);
}

namespace {

FunctionHandle sigma_restriction_handle(const SigmaContext& ctx) {
  const AlgebraHom sigma = ctx.sigma;
  const AlgebraPtr A = ctx.A;
  return FunctionHandle{ctx.B, [sigma, A](const std::vector<double>& x) {
                          return apply_hom(sigma, AlgebraElement{A, x}).coeffs;
                        }};
}

}  // namespace

IntegrateFixture integrate_fixture(const std::string& name) {
  if (name == "example7") {
    SigmaContext ctx = example7_context();
    IntegrateFixture fx{name, ctx, sigma_restriction_handle(ctx), 1, 1e-6, std::nullopt};
    fx.reference = std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
    return fx;
  }
  if (name == "constant-one") {
    SigmaContext ctx = scalar_context_1d();
    FunctionHandle h{ctx.B, [](const std::vector<double>&) { return std::vector<double>{1.0}; }};
    return IntegrateFixture{name, ctx, h, 4, 1e-6, std::vector<double>{1.0}};
  }
  if (name == "lebesgue-x") {
    SigmaContext ctx = scalar_context_1d();
    return IntegrateFixture{name, ctx, scalar_handle([](double x) { return x; }), 12, 1e-3,
                            std::vector<double>{0.5}};
  }
  if (name == "lebesgue-x2") {
    SigmaContext ctx = scalar_context_1d();
    return IntegrateFixture{name, ctx, scalar_handle([](double x) { return x * x; }), 12, 1e-3,
                            std::vector<double>{1.0 / 3.0}};
  }
  if (name == "lebesgue-exp") {
    SigmaContext ctx = scalar_context_1d();
    return IntegrateFixture{name, ctx, scalar_handle([](double x) { return std::exp(x); }), 12,
                            1e-3, std::vector<double>{std::exp(1.0) - 1.0}};
  }
  if (name == "bochner-xy1") {
    const AlgebraPtr A = coordinate_algebra(2);
    const AlgebraPtr B = coordinate_algebra(3);
    SigmaContext ctx = make_context(A, B, zero_hom(A, B), make_domain(2), 1.0);
    FunctionHandle h{B, [](const std::vector<double>& x) {
                       return std::vector<double>{x[0], x[1], 1.0};
                     }};
    return IntegrateFixture{name, ctx, h, 8, 1e-3, std::vector<double>{0.5, 0.5, 1.0}};
  }
  if (name == "bochner-circle") {
    const AlgebraPtr A = coordinate_algebra(1);
    const AlgebraPtr B = coordinate_algebra(2);
    SigmaContext ctx = make_context(A, B, zero_hom(A, B), make_domain(1), 1.0);
    FunctionHandle h{B, [](const std::vector<double>& x) {
                       return std::vector<double>{std::sin(kTwoPi * x[0]),
                                                  std::cos(kTwoPi * x[0])};
                     }};
    return IntegrateFixture{name, ctx, h, 12, 1e-3, std::vector<double>{0.0, 0.0}};
  }
  fail("InvalidInput", "unknown integrate fixture " + name);
}

std::vector<std::string> integrate_fixture_names() {
  return {"example7",     "constant-one", "lebesgue-x",    "lebesgue-x2",
          "lebesgue-exp", "bochner-xy1",  "bochner-circle"};
}

std::function<double(double)> scalar_fixture(const std::string& name) {
  if (name == "exp") return [](double x) { return std::exp(x); };
  if (name == "identity" || name == "x") return [](double x) { return x; };
  if (name == "sin") return [](double x) { return std::sin(kTwoPi * x); };
  if (name == "poly3") return [](double x) { return 1.0 + x * (-2.0 + x * (3.0 + x * 0.5)); };
  fail("InvalidInput", "unknown scalar fixture " + name);
}

std::vector<double> taylor_fixture_coeffs(const std::string& name, int order) {
  std::vector<double> coeffs;
  if (name == "exp") {
    double f = 1.0;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) f /= n;
      coeffs.push_back(f);
    }
    return coeffs;
  }
  if (name == "poly3") {
    coeffs = {1.0, -2.0, 3.0, 0.5};
    if (order + 1 < static_cast<int>(coeffs.size())) coeffs.resize(order + 1);
    return coeffs;
  }
  fail("InvalidInput", "no Taylor coefficients for fixture " + name);
}

}  // namespace qint
