#pragma once

#include "qint/rng.hpp"
#include "qint/stepfn.hpp"

namespace qint {

/// Everything an integration run needs: the algebra pair, the connecting
/// linear map, the domain box, and the norm used for deltas and reports.
struct SigmaContext {
  AlgebraPtr A;
  AlgebraPtr B;
  AlgebraHom sigma;  // A -> B
  DomainPtr domain;  // dim == dim(A) for the full setup; smaller for demos
  PNormSpec b_norm;

  void validate() const;
};

SigmaContext make_context(AlgebraPtr A, AlgebraPtr B, AlgebraHom sigma, DomainPtr domain,
                          double p = 1.0);

/// Measure-weighted average: sum (mu_i / mu(I_A)) b_i. Throws ArityMismatch
/// unless 2^dim inputs, BadWeights unless the measures sum to mu(I_A).
AlgebraElement frakA(const std::vector<AlgebraElement>& bs, const std::vector<double>& measures,
                     double total_measure);

/// frakA with the canonical sub-box measures of the domain.
AlgebraElement frakA(const DomainBoxSpec& d, const std::vector<AlgebraElement>& bs);

/// T(f) = sum b_i mu(I_i), computed with compensated summation in a fixed
/// piece order. Representation independent: splitting boxes never changes
/// the value.
AlgebraElement integrate_step(const StepFunction& f);

struct IntegralReport {
  AlgebraElement value;
  int levels = 0;  // number of levels evaluated (u = 0 .. levels-1)
  std::vector<AlgebraElement> level_values;
  std::vector<double> deltas;  // ||v_u - v_{u-1}||_{B,p}, length levels-1
  bool converged = false;
  std::uint64_t cells = 0;  // total cells evaluated across levels
};

/// Refinement-to-tolerance realization of the completed integral: evaluates
/// T on sampled level-u approximants for increasing u until the successive
/// delta drops below tol or u_max is reached.
IntegralReport integrate_limit(const FunctionHandle& h, const SigmaContext& ctx, double tol,
                               int u_max, SampleRule rule = SampleRule::midpoint,
                               std::uint64_t cell_budget = kDefaultCellBudget);

/// Value of T on the level-u approximant alone (streamed, no piece list).
AlgebraElement integrate_at_level(const FunctionHandle& h, const SigmaContext& ctx, int u,
                                  SampleRule rule = SampleRule::midpoint,
                                  std::uint64_t cell_budget = kDefaultCellBudget);

/// Componentwise vector integral over [0,1]^n with the zero connecting map
/// (semisimple R^n -> R^m setup).
IntegralReport bochner_integrate(const FunctionHandle& h, int n, double tol, int u_max,
                                 SampleRule rule = SampleRule::midpoint,
                                 std::uint64_t cell_budget = kDefaultCellBudget);

/// 1-D real special case of bochner_integrate.
IntegralReport lebesgue_integrate(const std::function<double(double)>& h, double tol, int u_max,
                                  SampleRule rule = SampleRule::midpoint,
                                  std::uint64_t cell_budget = kDefaultCellBudget);

// ---------------------------------------------------------------------------
// Law harness
// ---------------------------------------------------------------------------

struct LawRow {
  std::string law;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

struct LawReport {
  std::vector<LawRow> rows;

  bool ok() const;
  void add(std::string law, double residual, double tolerance, std::string note = {});
  /// Gate rows that assert a quantity must EXCEED a bound (witness checks).
  void add_at_least(std::string law, double value, double bound, std::string note = {});
};

/// Candidate morphism from the step triple to the algebra triple.
using ThetaFn = std::function<AlgebraElement(const StepFunction&)>;

/// Random step function with at most max_pieces disjoint boxes.
StepFunction random_step_function(const SigmaContext& ctx, SplitRng& rng, int max_pieces = 4);
AlgebraElement random_element(const AlgebraPtr& alg, SplitRng& rng, double amp = 1.0);

/// Checks H1 (theta(1_{I_A}) = mu(I_A) 1_B), H2 (the commuting square
/// frakA . theta^{2^d} = theta . gamma_xi), linearity, and the bimodule law
/// theta(a.f.b) = sigma(a) theta(f) b over seeded random inputs.
LawReport check_H_laws(const SigmaContext& ctx, const ThetaFn& theta, int trials, SplitRng rng,
                       double tol = 1e-9);

/// Distinguished-element and structured-map laws for the two shipped
/// triples: ||v|| <= mu(I_A) and delta((v,...,v)) = v.
LawReport check_triple_laws(const SigmaContext& ctx, double tol = 1e-9);

/// I1: linearity residuals on random pairs. I2: integrating the scalarized
/// function x -> ||h(x)||_{B,1} 1_B lands in R^{>=0} 1_B. I3: shrinking
/// supports h_t = 1_{[0,2^-t)} b have integral norms decreasing below tol.
LawReport daniell_suite(const SigmaContext& ctx, int trials, SplitRng rng, double tol_i1 = 1e-9,
                        double tol_i2 = 1e-12, double i3_target = 1e-6, int i3_depth = 20);

/// Sampled estimate of ||T restricted to E_u|| against the chain norm:
/// random unit-norm level-u elements must stay below mu(I_A)(1+1e-9) and the
/// constant witness must reach mu(I_A)(1-1e-3).
LawReport operator_norm_check(const SigmaContext& ctx, int u_max, int trials, SplitRng rng,
                              double upper_slack = 1e-9, double witness_slack = 1e-3);

}  // namespace qint
