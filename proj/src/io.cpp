#include "qint/io.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "qint/errors.hpp"
#include "qint/fixtures.hpp"
#include "qint/version.hpp"

namespace qint {

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("InvalidInput", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail("InvalidInput", std::string("JSON parse error in ") + path + ": " + e.what());
  }
  return j;
}

WeightQuiver quiver_from_json(const json& spec) {
  WeightQuiver q;
  for (const auto& v : spec.at("vertices")) {
    if (v.is_string())
      q.vertices.push_back(v.get<std::string>());
    else
      q.vertices.push_back(std::to_string(v.get<long long>()));
  }
  for (const auto& a : spec.value("arrows", json::array()))
    q.arrows.push_back(Arrow{a.at("id"), a.at("src").is_string()
                                             ? a.at("src").get<std::string>()
                                             : std::to_string(a.at("src").get<long long>()),
                             a.at("tgt").is_string()
                                 ? a.at("tgt").get<std::string>()
                                 : std::to_string(a.at("tgt").get<long long>())});
  if (spec.contains("weights"))
    for (const auto& [v, w] : spec.at("weights").items()) q.weights[v] = w.get<int>();
  q.validate();
  return q;
}

Path path_from_json(const WeightQuiver& q, const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("e:", 0) == 0) return Path::trivial(s.substr(2));
    return Path::of(q, {s});
  }
  if (j.is_array()) {
    std::vector<std::string> ids;
    for (const auto& e : j) ids.push_back(e.get<std::string>());
    if (ids.empty()) fail("InvalidInput", "empty path needs the \"e:<vertex>\" form");
    return Path::of(q, ids);
  }
  fail("InvalidInput", "path must be an array of arrow ids or \"e:<vertex>\"");
}

PNormSpec norm_from_json(const AlgebraPtr& alg, const json& spec) {
  PNormSpec norm = default_pnorm(alg, 1.0);
  if (!spec.is_object()) return norm;
  norm.p = spec.value("p", 1.0);
  if (spec.contains("basis_norm")) {
    const json& bn = spec.at("basis_norm");
    const double fallback = bn.value("...default", 1.0);
    norm.basis_norm.values.assign(alg->dim(), fallback);
    for (const auto& [label, value] : bn.items()) {
      if (label == "...default") continue;
      const int idx = alg->index_of(label);
      if (idx < 0) fail("InvalidInput", "basis_norm for unknown label " + label);
      norm.basis_norm.values[idx] = value.get<double>();
    }
  }
  norm.validate();
  return norm;
}

std::vector<double> coeffs_from_json(const AlgebraPtr& alg, const json& j) {
  std::vector<double> c(alg->dim(), 0.0);
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != alg->dim())
      fail("InvalidInput", "coefficient array length != dim");
    for (int i = 0; i < alg->dim(); ++i) c[i] = j[i].get<double>();
    return c;
  }
  for (const auto& [label, value] : j.items()) {
    const int idx = alg->index_of(label);
    if (idx < 0) fail("InvalidInput", "coefficient for unknown label " + label);
    c[idx] = value.get<double>();
  }
  return c;
}

}  // namespace

LoadedAlgebra load_algebra(const json& spec) {
  if (!spec.is_object()) fail("InvalidInput", "algebra definition must be a JSON object");
  if (spec.contains("mult_table")) {
    StructureConstantAlgebra alg;
    alg.name = spec.value("name", "inline-algebra");
    for (const auto& l : spec.at("basis_labels")) alg.basis_labels.push_back(l.get<std::string>());
    alg.mult_table = spec.at("mult_table").get<std::vector<std::vector<std::vector<double>>>>();
    alg.unit = spec.at("unit").get<std::vector<double>>();
    if (spec.contains("idempotents"))
      alg.idempotents = spec.at("idempotents").get<std::vector<std::vector<double>>>();
    AlgebraPtr p = make_algebra(std::move(alg));
    return LoadedAlgebra{p, norm_from_json(p, spec.value("norm", json()))};
  }
  const WeightQuiver q = quiver_from_json(spec);
  const json relations = spec.value("relations", json::object());
  AlgebraPtr alg;
  if (relations.contains("rewrite") || relations.contains("normal_form_basis")) {
    RewriteSystem rw;
    for (const auto& r : relations.value("rewrite", json::array())) {
      RewriteRule rule;
      rule.lhs = path_from_json(q, r.at("lhs"));
      for (const auto& term : r.value("rhs", json::array()))
        rule.rhs.emplace_back(path_from_json(q, term.at("path")), term.at("coeff").get<double>());
      rw.rules.push_back(std::move(rule));
    }
    for (const auto& p : relations.at("normal_form_basis"))
      rw.normal_form_basis.push_back(path_from_json(q, p));
    alg = algebra_from_rewrite_system(q, rw, spec.value("max_reduction_steps", 10000),
                                      spec.value("name", "rewrite-algebra"));
  } else {
    std::vector<Path> monomials;
    for (const auto& p : relations.value("monomial", json::array()))
      monomials.push_back(path_from_json(q, p));
    if (!spec.contains("cutoff"))
      fail("InvalidInput", "admissible-quiver definition needs a cutoff");
    alg = algebra_from_admissible_quiver(q, monomials, spec.at("cutoff").get<int>(),
                                         spec.value("name", "quiver-algebra"));
  }
  return LoadedAlgebra{alg, norm_from_json(alg, spec.value("norm", json()))};
}

LoadedAlgebra load_algebra_file(const std::string& path) {
  return load_algebra(load_json_file(path));
}

AlgebraPtr algebra_fixture(const std::string& name) {
  if (name == "example7-A") return example7_A();
  if (name == "example7-B") return example7_B();
  if (name == "corrupted-table") return corrupted_table_fixture();
  if (name == "C-realified") return complex_realified();
  if (name == "R") return scalar_real_algebra();
  if (name.rfind("R^", 0) == 0) return coordinate_algebra(std::stoi(name.substr(2)), name);
  fail("InvalidInput", "unknown algebra fixture " + name);
}

namespace {

AlgebraPtr algebra_from_name_or_object(const json& j) {
  if (j.is_string()) return algebra_fixture(j.get<std::string>());
  return load_algebra(j).algebra;
}

}  // namespace

namespace {

AlgebraHom hom_with_endpoints(const AlgebraPtr& domain, const AlgebraPtr& codomain,
                              const json& spec) {
  AlgebraHom h = zero_hom(domain, codomain);
  if (spec.contains("matrix")) {
    h.matrix = spec.at("matrix").get<std::vector<std::vector<double>>>();
    h.validate_shape();
    return h;
  }
  if (!spec.contains("basis_map")) fail("InvalidInput", "hom needs a matrix or a basis_map");
  for (const auto& [label, image] : spec.at("basis_map").items()) {
    const int col = domain->index_of(label);
    if (col < 0) fail("InvalidInput", "basis_map for unknown domain label " + label);
    for (const auto& term : image) {
      const int row = codomain->index_of(term.at("label").get<std::string>());
      if (row < 0) fail("InvalidInput", "basis_map hits unknown codomain label");
      h.matrix[row][col] = term.at("coeff").get<double>();
    }
  }
  return h;
}

}  // namespace

AlgebraHom load_hom(const json& spec) {
  return hom_with_endpoints(algebra_from_name_or_object(spec.at("domain")),
                            algebra_from_name_or_object(spec.at("codomain")), spec);
}

AlgebraHom load_hom_file(const std::string& path) { return load_hom(load_json_file(path)); }

StepFunction load_step_function(const json& spec) {
  const json& dj = spec.at("domain");
  const DomainPtr domain = make_domain(dj.at("dim").get<int>(), dj.value("lo", 0.0),
                                       dj.value("hi", 1.0), dj.value("xi", 0.5));
  const AlgebraPtr b = algebra_from_name_or_object(spec.at("algebra"));
  StepFunction f = zero_step(domain, b);
  for (const auto& pj : spec.value("pieces", json::array())) {
    Box box;
    for (const auto& aj : pj.at("box")) {
      AxisInterval ax;
      ax.lo = aj.at(0).get<double>();
      ax.hi = aj.at(1).get<double>();
      const std::string form = aj.size() > 2 ? aj.at(2).get<std::string>() : "co";
      if (form.size() != 2 || (form[0] != 'c' && form[0] != 'o') ||
          (form[1] != 'c' && form[1] != 'o'))
        fail("InvalidInput", "endpoint form must be one of cc, co, oc, oo");
      ax.lo_closed = form[0] == 'c';
      ax.hi_closed = form[1] == 'c';
      box.axes.push_back(ax);
    }
    if (static_cast<int>(box.axes.size()) != domain->dim)
      fail("InvalidInput", "piece box dimension != domain dim");
    for (const auto& ax : box.axes) {
      if (!(ax.lo <= ax.hi)) fail("InvalidInput", "piece interval needs lo <= hi");
      if (ax.lo < domain->lo || ax.hi > domain->hi)
        fail("InvalidInput", "piece box escapes the domain box");
    }
    f.pieces.emplace_back(std::move(box), coeffs_from_json(b, pj.at("coeff")));
  }
  check_disjoint_pieces(f);
  return f;
}

namespace {

AlgebraHom hom_from_name_or_object(const json& j, const AlgebraPtr& domain,
                                   const AlgebraPtr& codomain) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "example7-sigma") return example7_sigma();
    if (name == "identity") return identity_hom(domain);
    if (name == "zero") return zero_hom(domain, codomain);
    fail("InvalidInput", "unknown hom fixture " + name);
  }
  // Inline homs may omit the endpoints and inherit the context pair.
  if (!j.contains("domain")) return hom_with_endpoints(domain, codomain, j);
  return load_hom(j);
}

}  // namespace

SigmaContext load_context(const json& spec) {
  const AlgebraPtr A = algebra_from_name_or_object(spec.at("A"));
  const AlgebraPtr B = algebra_from_name_or_object(spec.at("B"));
  const json& dj = spec.at("domain");
  const DomainPtr domain = make_domain(dj.at("dim").get<int>(), dj.value("lo", 0.0),
                                       dj.value("hi", 1.0), dj.value("xi", 0.5));
  AlgebraHom sigma = spec.contains("sigma")
                         ? hom_from_name_or_object(spec.at("sigma"), A, B)
                         : (A == B ? identity_hom(A) : zero_hom(A, B));
  // Fixture homs carry their own endpoints; for by-name loads the algebras
  // must coincide with the requested pair.
  if (sigma.domain != A || sigma.codomain != B)
    fail("InvalidInput", "sigma endpoints differ from the context algebras");
  SigmaContext ctx = make_context(A, B, std::move(sigma), domain, spec.value("p", 1.0));
  if (spec.contains("norm")) ctx.b_norm = norm_from_json(ctx.B, spec.at("norm"));
  return ctx;
}

FunctionHandle load_handle(const json& spec, const SigmaContext& ctx) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "constant") {
    const std::vector<double> coeffs = coeffs_from_json(ctx.B, spec.at("coeff"));
    return FunctionHandle{ctx.B,
                          [coeffs](const std::vector<double>&) { return coeffs; }};
  }
  if (name == "affine-by-coordinate") {
    std::vector<double> offset(ctx.B->dim(), 0.0);
    if (spec.contains("offset")) offset = coeffs_from_json(ctx.B, spec.at("offset"));
    std::vector<std::vector<double>> slopes;
    for (const auto& s : spec.value("slopes", json::array()))
      slopes.push_back(coeffs_from_json(ctx.B, s));
    if (static_cast<int>(slopes.size()) != ctx.domain->dim)
      fail("InvalidInput", "affine-by-coordinate needs one slope block per axis");
    return FunctionHandle{ctx.B, [offset, slopes](const std::vector<double>& x) {
                            std::vector<double> out = offset;
                            for (std::size_t k = 0; k < slopes.size(); ++k)
                              for (std::size_t i = 0; i < out.size(); ++i)
                                out[i] += x[k] * slopes[k][i];
                            return out;
                          }};
  }
  if (name == "polynomial-1d" || name == "exp" || name == "sin") {
    if (ctx.domain->dim != 1 || ctx.B->dim() != 1)
      fail("InvalidInput", name + " needs a 1-D domain and scalar values");
    if (name == "polynomial-1d") {
      const std::vector<double> coeffs = spec.at("coeffs").get<std::vector<double>>();
      return FunctionHandle{ctx.B, [coeffs](const std::vector<double>& x) {
                              double acc = 0.0;
                              for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                                acc = acc * x[0] + *it;
                              return std::vector<double>{acc};
                            }};
    }
    if (name == "exp")
      return FunctionHandle{ctx.B, [](const std::vector<double>& x) {
                              return std::vector<double>{std::exp(x[0])};
                            }};
    const double freq = spec.value("frequency", 1.0);
    return FunctionHandle{ctx.B, [freq](const std::vector<double>& x) {
                            return std::vector<double>{
                                std::sin(6.283185307179586 * freq * x[0])};
                          }};
  }
  if (name == "sigma-restriction") {
    if (ctx.domain->dim != ctx.A->dim())
      fail("InvalidInput", "sigma-restriction needs domain dim == dim(A)");
    const AlgebraHom sigma = ctx.sigma;
    const AlgebraPtr A = ctx.A;
    return FunctionHandle{ctx.B, [sigma, A](const std::vector<double>& x) {
                            return apply_hom(sigma, AlgebraElement{A, x}).coeffs;
                          }};
  }
  fail("InvalidInput", "unknown handle " + name);
}

IntegrateConfig load_integrate_config(const json& spec) {
  IntegrateConfig cfg;
  cfg.ctx = load_context(spec.at("context"));
  cfg.handle = load_handle(spec.at("handle"), cfg.ctx);
  cfg.tol = spec.value("tol", 1e-6);
  cfg.u_max = spec.value("u_max", 12);
  cfg.rule = spec.value("rule", "midpoint");
  if (!(cfg.tol > 0.0)) fail("InvalidInput", "tol must be positive");
  return cfg;
}

IntegrateConfig load_integrate_config_file(const std::string& path) {
  return load_integrate_config(load_json_file(path));
}

json algebra_to_json(const StructureConstantAlgebra& alg) {
  json j;
  j["name"] = alg.name;
  j["basis_labels"] = alg.basis_labels;
  j["mult_table"] = alg.mult_table;
  j["unit"] = alg.unit;
  if (!alg.idempotents.empty()) j["idempotents"] = alg.idempotents;
  return j;
}

json element_to_json(const AlgebraElement& x) {
  json j = json::object();
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    if (x.coeffs[i] != 0.0) j[x.algebra->basis_labels[i]] = x.coeffs[i];
  return j;
}

json verify_report_to_json(const VerifyReport& report, std::size_t max_rows) {
  json j;
  j["ok"] = report.ok();
  j["max_residual"] = report.max_residual;
  j["violation_count"] = report.violations.size();
  json rows = json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < max_rows; ++i) {
    const auto& v = report.violations[i];
    rows.push_back({{"invariant", v.invariant}, {"where", v.where}, {"residual", v.residual}});
  }
  j["violations"] = rows;
  return j;
}

json law_report_to_json(const LawReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row{{"law", r.law}, {"residual", r.residual}, {"tolerance", r.tolerance},
             {"pass", r.pass}};
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  return json{{"ok", report.ok()}, {"rows", rows}};
}

json integral_report_to_json(const IntegralReport& report, const AlgebraPtr& b) {
  json j;
  j["value"] = element_to_json(AlgebraElement{b, report.value.coeffs});
  j["levels"] = report.levels;
  j["deltas"] = report.deltas;
  j["converged"] = report.converged;
  j["cells"] = report.cells;
  json levels = json::array();
  for (const auto& v : report.level_values)
    levels.push_back(element_to_json(AlgebraElement{b, v.coeffs}));
  j["level_values"] = levels;
  return j;
}

std::string fixture_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::string fixture_hash(const StructureConstantAlgebra& alg) {
  return fixture_hash(algebra_to_json(alg));
}

json report_skeleton(const std::string& command, std::uint64_t seed, const json& tolerances,
                     const json& fixture_hashes) {
  json j;
  j["engine_version"] = kEngineVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["tolerances"] = tolerances.is_null() ? json::object() : tolerances;
  j["fixture_hashes"] = fixture_hashes.is_null() ? json::object() : fixture_hashes;
  j["timestamp"] = [] {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string(buf);
  }();
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("InvalidInput", "cannot write " + path);
  out << content;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const std::string& cell = row[i];
      if (cell.find_first_of(",\"\r\n") != std::string::npos) {
        out << '"';
        for (char c : cell) {
          if (c == '"')
            out << "\"\"";
          else
            out << c;
        }
        out << '"';
      } else {
        out << cell;
      }
    }
    out << "\r\n";
  }
  return out.str();
}

}  // namespace qint
