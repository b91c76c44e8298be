#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qint {

/// Tolerance for structural residuals (associativity, unitality,
/// multiplicativity). Structure constants are small exact rationals in
/// practice, so residuals are effectively zero when an invariant holds.
inline constexpr double kTolAlg = 1e-9;

struct Arrow {
  std::string id;
  std::string src;
  std::string tgt;
};

/// Directed multigraph with a positive integer weight per vertex. Weights are
/// metadata in this engine; all structure constants live over the reals.
struct WeightQuiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::map<std::string, int> weights;  // absent vertices default to 1

  void validate() const;
  bool has_vertex(const std::string& v) const;
  const Arrow* find_arrow(const std::string& id) const;
  int weight(const std::string& v) const;
};

/// Composable arrow-id sequence. An empty sequence is the lazy path at
/// `vertex`. Non-trivial paths also record their source vertex so trivial
/// and non-trivial paths share one representation.
struct Path {
  std::string vertex;               // source vertex
  std::vector<std::string> arrows;  // empty for eps_v

  static Path trivial(std::string v);
  /// Builds and validates a non-empty path from arrow ids (checks that
  /// consecutive arrows compose).
  static Path of(const WeightQuiver& q, const std::vector<std::string>& arrow_ids);

  bool is_trivial() const { return arrows.empty(); }
  std::size_t length() const { return arrows.size(); }
  const std::string& source() const { return vertex; }
  std::string target(const WeightQuiver& q) const;
  /// "e<vertex>" for trivial paths, concatenated arrow ids otherwise.
  std::string label() const;

  bool operator==(const Path&) const = default;
  bool operator<(const Path& o) const;
};

/// All composable paths of length <= max_len including every eps_v, ordered
/// by length then lexicographically by arrow-id sequence.
std::vector<Path> enumerate_paths(const WeightQuiver& q, int max_len);

struct StructureConstantAlgebra;
using AlgebraPtr = std::shared_ptr<const StructureConstantAlgebra>;

/// Finite-dimensional real algebra given by a labeled basis and the full
/// multiplication table. Immutable after construction; share freely.
struct StructureConstantAlgebra {
  std::string name;
  std::vector<std::string> basis_labels;
  /// mult_table[i][j] = coefficients of e_i * e_j over the basis.
  std::vector<std::vector<std::vector<double>>> mult_table;
  std::vector<double> unit;
  /// Optional orthogonal idempotent decomposition (the eps_v vectors).
  std::vector<std::vector<double>> idempotents;

  int dim() const { return static_cast<int>(basis_labels.size()); }
  int index_of(const std::string& label) const;  // -1 when absent

  /// Structural shape checks (no numeric verification); throws InvalidInput.
  void validate_shape() const;
};

AlgebraPtr make_algebra(StructureConstantAlgebra alg);

/// The canonical dim-1 real algebra. One shared instance: element and norm
/// operations compare algebras by identity, so everything scalar must agree
/// on this pointer.
AlgebraPtr scalar_real_algebra();

/// Coefficient vector over an algebra's basis.
struct AlgebraElement {
  AlgebraPtr algebra;
  std::vector<double> coeffs;
};

AlgebraElement element(AlgebraPtr alg, std::vector<double> coeffs);
AlgebraElement basis_element(const AlgebraPtr& alg, int i);
AlgebraElement zero_element(const AlgebraPtr& alg);
AlgebraElement unit_element(const AlgebraPtr& alg);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(double k, const AlgebraElement& x);
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);

double max_abs(const AlgebraElement& x);
double max_abs_diff(const AlgebraElement& x, const AlgebraElement& y);

/// Linear map between algebras stored as a codomain-dim x domain-dim matrix.
/// Whether it is unital/multiplicative is a property reported by verify_hom,
/// not a construction precondition; several shipped morphisms are linear
/// projections that fail one of the two.
struct AlgebraHom {
  AlgebraPtr domain;
  AlgebraPtr codomain;
  std::vector<std::vector<double>> matrix;

  void validate_shape() const;
};

AlgebraHom identity_hom(const AlgebraPtr& a);
AlgebraHom zero_hom(const AlgebraPtr& domain, const AlgebraPtr& codomain);
AlgebraElement apply_hom(const AlgebraHom& h, const AlgebraElement& x);

struct Violation {
  std::string invariant;
  std::string where;
  double residual;
};

struct VerifyReport {
  std::vector<Violation> violations;
  double max_residual = 0.0;

  bool ok() const { return violations.empty(); }
  void record(const std::string& invariant, const std::string& where, double residual, double tol);
};

/// Scans unitality on every basis element, associativity on every basis
/// triple, and the idempotent decomposition when present. Violations are
/// report content, not faults.
VerifyReport verify_algebra(const StructureConstantAlgebra& alg, double tol = kTolAlg);

/// Scans unit |-> unit and multiplicativity h(e_i e_j) = h(e_i) h(e_j) on
/// every basis pair.
VerifyReport verify_hom(const AlgebraHom& h, double tol = kTolAlg);

/// Quotient of the path algebra by monomial relations (path = 0), truncated
/// at nilpotency_cutoff. Basis: surviving paths in enumeration order.
/// Throws CutoffTooSmall when a length-cutoff path survives reduction and
/// InvalidRelation when a relation path does not compose.
AlgebraPtr algebra_from_admissible_quiver(const WeightQuiver& q,
                                          const std::vector<Path>& monomial_relations,
                                          int nilpotency_cutoff,
                                          std::string name = {});

/// Rule lhs -> sum(coeff * rhs path). Endpoints of every rhs path must match
/// the lhs; the lhs must be non-trivial.
struct RewriteRule {
  Path lhs;
  std::vector<std::pair<Path, double>> rhs;
};

/// User-supplied reduction rules plus the declared normal-form basis. Used
/// for non-admissible quotients that mix path lengths; confluence is not
/// assumed, associativity of the induced table is verified post hoc.
struct RewriteSystem {
  std::vector<RewriteRule> rules;
  std::vector<Path> normal_form_basis;
};

/// Structure-constant algebra on the declared normal-form basis. Throws
/// NonTerminating when a product needs more than max_reduction_steps,
/// NotClosed when a reduced word escapes the basis, AssociativityFailure
/// when the induced table fails verification.
AlgebraPtr algebra_from_rewrite_system(const WeightQuiver& q, const RewriteSystem& rw,
                                       int max_reduction_steps = 10000, std::string name = {});

}  // namespace qint
