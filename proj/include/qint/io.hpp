#pragma once

#include "json.hpp"
#include "qint/integrate.hpp"

namespace qint {

using json = nlohmann::json;

/// Algebra definition loaded from JSON. Three presentation routes, chosen by
/// the fields present: a direct structure-constant table ("mult_table"), a
/// rewrite system ("relations.rewrite" / "relations.normal_form_basis"), or
/// monomial relations with a nilpotency cutoff ("relations.monomial" +
/// "cutoff"). An optional "norm" block supplies {p, basis_norm{label:
/// value, "...default": v}}.
struct LoadedAlgebra {
  AlgebraPtr algebra;
  PNormSpec norm;
};

LoadedAlgebra load_algebra(const json& spec);
LoadedAlgebra load_algebra_file(const std::string& path);

/// Built-in algebra fixtures by name: example7-A, example7-B,
/// corrupted-table, C-realified, R, R^n.
AlgebraPtr algebra_fixture(const std::string& name);

/// Hom file: {"domain": name-or-object, "codomain": name-or-object,
/// "matrix": [[...]]} or {"basis_map": {domain-label: [{"label","coeff"}]}}.
/// The hom fixture name "example7-sigma" is also accepted in place of a file.
AlgebraHom load_hom(const json& spec);
AlgebraHom load_hom_file(const std::string& path);

/// Step-function literal: {"domain": {dim,lo,hi,xi}, "algebra": name-or-object,
/// "pieces": [{"box": [[lo,hi,"cc"|"co"|"oc"|"oo"],...], "coeff": {label: v}}]}.
StepFunction load_step_function(const json& spec);

/// Run-context block: {"A": name-or-object, "B": name-or-object,
/// "sigma": name-or-object, "domain": {dim,lo,hi,xi}, "p": 1}.
SigmaContext load_context(const json& spec);

/// Named sampling handles with parameter blocks:
///   constant            {"coeff": {label: v}}
///   affine-by-coordinate {"offset": {...}, "slopes": [{...} per axis]}
///   polynomial-1d       {"coeffs": [c0, c1, ...]}        (scalar B)
///   exp | sin           {"frequency": f}                 (scalar B, sin only)
///   sigma-restriction   {}                               (samples sigma(x))
FunctionHandle load_handle(const json& spec, const SigmaContext& ctx);

/// Full integrate run config: {"context": {...}, "handle": {...},
/// "tol": 1e-6, "u_max": 12, "rule": "midpoint"}.
struct IntegrateConfig {
  SigmaContext ctx;
  FunctionHandle handle;
  double tol = 1e-6;
  int u_max = 12;
  std::string rule = "midpoint";
};

IntegrateConfig load_integrate_config(const json& spec);
IntegrateConfig load_integrate_config_file(const std::string& path);

json algebra_to_json(const StructureConstantAlgebra& alg);
json element_to_json(const AlgebraElement& x);
json verify_report_to_json(const VerifyReport& report, std::size_t max_rows = 32);
json law_report_to_json(const LawReport& report);
json integral_report_to_json(const IntegralReport& report, const AlgebraPtr& b);

/// FNV-1a over a canonical serialization; stable across runs and platforms.
std::string fixture_hash(const json& j);
std::string fixture_hash(const StructureConstantAlgebra& alg);

/// Common report envelope: engine version, command line, seed, tolerances,
/// fixture hashes. The timestamp is the only non-reproducible field and
/// serializes on its own line.
json report_skeleton(const std::string& command, std::uint64_t seed, const json& tolerances,
                     const json& fixture_hashes);

void write_text_file(const std::string& path, const std::string& content);

/// RFC-4180 rows (CRLF line endings, quoting only when needed).
std::string to_csv(const std::vector<std::vector<std::string>>& rows);

}  // namespace qint
