#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "qint/norms.hpp"

namespace qint {

inline constexpr std::uint64_t kDefaultCellBudget = std::uint64_t(1) << 24;

/// Product domain [lo,hi]^dim with the split point xi shared by all axes.
/// kappa_lo / kappa_hi are the fixed affine order-preserving bijections onto
/// [lo,xi] and [xi,hi].
struct DomainBoxSpec {
  int dim = 1;
  double lo = 0.0;
  double hi = 1.0;
  double xi = 0.5;

  void validate() const;
  double length() const { return hi - lo; }
  double total_measure() const;

  /// upper=false: kappa_lo(t) = lo + (t-lo)(xi-lo)/(hi-lo);
  /// upper=true:  kappa_hi(t) = xi + (t-lo)(hi-xi)/(hi-lo).
  double kappa(bool upper, double t) const;
  double kappa_inv(bool upper, double t) const;
};

using DomainPtr = std::shared_ptr<const DomainBoxSpec>;
DomainPtr make_domain(int dim, double lo = 0.0, double hi = 1.0, double xi = 0.5);

struct AxisInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = false;

  bool empty() const;
  bool contains(double t) const;
  double length() const { return hi - lo; }
};

/// Axis-aligned product of intervals; the four endpoint forms per axis.
struct Box {
  std::vector<AxisInterval> axes;

  double measure() const;
  bool contains(const std::vector<double>& x) const;
};

Box full_box(const DomainBoxSpec& d);
std::optional<AxisInterval> intersect(const AxisInterval& a, const AxisInterval& b);
std::optional<Box> intersect(const Box& a, const Box& b);
bool boxes_disjoint(const Box& a, const Box& b);
/// Decomposition of a minus b into disjoint boxes.
std::vector<Box> subtract(const Box& a, const Box& b);
std::vector<Box> subtract_all(const Box& a, const std::vector<Box>& bs);

/// Finite list of disjoint boxes with B-valued coefficients. Coverage is not
/// required; uncovered points evaluate to 0_B. Immutable in practice.
struct StepFunction {
  DomainPtr domain;
  AlgebraPtr algebra;  // B
  std::vector<std::pair<Box, std::vector<double>>> pieces;
};

StepFunction constant_step(const DomainPtr& d, const AlgebraElement& b);
StepFunction zero_step(const DomainPtr& d, const AlgebraPtr& b);

/// Throws InvalidInput when two pieces overlap.
void check_disjoint_pieces(const StepFunction& f);

/// Coefficient of the unique piece containing x, else 0_B. Throws
/// OutOfDomain when x lies outside the closed domain box.
AlgebraElement evaluate(const StepFunction& f, const std::vector<double>& x);

/// Pointwise sum. Pieces of the result partition the union of supports into
/// f-only boxes, g-only boxes, and pairwise intersections with summed
/// coefficients.
StepFunction sf_add(const StepFunction& f, const StepFunction& g);
StepFunction sf_scale(double k, const StepFunction& f);

/// a.f.b with a acting through sigma: every coefficient c becomes
/// sigma(a) * c * b; boxes unchanged.
StepFunction module_action(const AlgebraElement& a, const StepFunction& f,
                           const AlgebraElement& b, const AlgebraHom& sigma);

/// ||f||_p = (sum_i ||b_i||_{B,p}^p mu(I_i)^p)^(1/p) over the current piece
/// list. Representation independent only at p = 1.
double step_norm(const StepFunction& f, const PNormSpec& b_spec);

/// Chain norm for level-u elements: (sum_i (mu(I_i)/mu(I_A))^p ||b_i||^p)^(1/p),
/// the unrolled form of the weighted direct-sum norm.
double eu_norm(const StepFunction& f, const PNormSpec& b_spec);

/// Corner signature of sub-box i: bit k of i selects kappa_hi on axis k
/// (axis 0 is the fastest-varying index).
Box sub_box(const DomainBoxSpec& d, unsigned signature);
double sub_box_measure(const DomainBoxSpec& d, unsigned signature);

/// Assembles 2^dim functions into one, rescaling function i into sub-box i.
/// Throws ArityMismatch unless exactly 2^dim inputs are given.
StepFunction gamma_xi(const std::vector<StepFunction>& fs);

/// Inverse on functions whose every piece lies wholly inside one sub-box;
/// throws NotAligned otherwise.
std::vector<StepFunction> gamma_xi_inverse(const StepFunction& f);

/// Function handle I_A -> B used for sampling.
struct FunctionHandle {
  AlgebraPtr codomain;
  std::function<std::vector<double>(const std::vector<double>&)> fn;
};

enum class SampleRule { midpoint, corner };

/// Per-axis level-u cells (the u-fold xi-subdivision images), in increasing
/// order. Cell 0 starts at lo; the last cell ends closed at hi.
std::vector<AxisInterval> axis_cells(const DomainBoxSpec& d, int u);

/// The E_u element sampling h on each level-u cell at its midpoint or lower
/// corner. Throws BudgetExceeded when 2^(dim*u) exceeds the cell budget.
StepFunction sample_to_Eu(const FunctionHandle& h, const DomainPtr& d, int u,
                          SampleRule rule = SampleRule::midpoint,
                          std::uint64_t cell_budget = kDefaultCellBudget);

/// Streams the level-u cells of sample_to_Eu without materializing pieces:
/// visit(midpoint-or-corner sample point, cell measure) in the same
/// deterministic cell order.
void for_each_Eu_cell(const DomainBoxSpec& d, int u, SampleRule rule,
                      const std::function<void(const std::vector<double>&, double)>& visit,
                      std::uint64_t cell_budget = kDefaultCellBudget);

}  // namespace qint
