#pragma once

#include <optional>

#include "qint/integrate.hpp"

namespace qint {

/// Built-in 11-dimensional algebra on the three-vertex quiver with loops x1,
/// x2 and doubled arrows a/a', b/b', c/c'; x1^2 = -e1 and x2^2 = -e2, so the
/// loop blocks realify complex scalars. Constructed through the rewrite
/// system and verified on all basis triples.
AlgebraPtr example7_A();

/// Built-in 6-dimensional triangle-quiver algebra with ab = bc = ca = 0.
AlgebraPtr example7_B();

/// The coordinate projection A -> B fixing e1,e2,e3,a,b,c and killing
/// x1,x2,a',b',c'. Linear and unital; intentionally NOT multiplicative:
/// products such as x1*x1 = -e1 land outside the kernel, and no unital
/// multiplicative map with this action on e1..c exists (hom check flags it).
AlgebraHom example7_sigma();

/// example7_A with a single corrupted multiplication entry; fails the
/// associativity scan (mutation-sensitivity fixture).
AlgebraPtr corrupted_table_fixture();

/// Semisimple coordinate algebra R^n.
AlgebraPtr coordinate_algebra(int n, std::string name = {});

/// Realified complex scalars: basis {e, x} with x^2 = -e.
AlgebraPtr complex_realified();

/// Full sigma-context for the built-in worked example: domain [0,1]^11.
SigmaContext example7_context(double p = 1.0);

/// 1-D identity context over the scalar reals on [0,1].
SigmaContext scalar_context_1d(double p = 1.0);

/// Identity context over B = example7_B (domain dimension = dim B would be
/// 6; demos use a low-dimensional domain instead, chosen by dim).
SigmaContext identity_context(const AlgebraPtr& b, int dim, double lo = 0.0, double hi = 1.0,
                              double xi = 0.5, double p = 1.0);

struct IntegrateFixture {
  std::string name;
  SigmaContext ctx;
  FunctionHandle handle;
  int default_u_max = 12;
  double default_tol = 1e-6;
  /// Closed-form value when one exists (for oracles and reports).
  std::optional<std::vector<double>> reference;
};

/// Named integration fixtures: example7, constant-one, lebesgue-x,
/// lebesgue-x2, lebesgue-exp, bochner-xy1, bochner-circle.
IntegrateFixture integrate_fixture(const std::string& name);
std::vector<std::string> integrate_fixture_names();

/// Named 1-D scalar fixtures for the approximation reports: exp, identity
/// ("x"), poly3, sin.
std::function<double(double)> scalar_fixture(const std::string& name);
/// Taylor coefficients at 0 for a named scalar fixture (exp, poly3).
std::vector<double> taylor_fixture_coeffs(const std::string& name, int order);

}  // namespace qint
