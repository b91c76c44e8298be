#include "qint/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qint/errors.hpp"

namespace qint {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightQuiver
// ---------------------------------------------------------------------------

void WeightQuiver::validate() const {
  std::set<std::string> vs(vertices.begin(), vertices.end());
  if (vs.size() != vertices.size()) fail("InvalidInput", "duplicate vertex ids");
  std::set<std::string> ids;
  for (const auto& a : arrows) {
    if (!ids.insert(a.id).second) fail("InvalidInput", "duplicate arrow id " + a.id);
    if (!vs.count(a.src) || !vs.count(a.tgt))
      fail("InvalidInput", "arrow " + a.id + " references unknown vertex");
  }
  for (const auto& [v, w] : weights) {
    if (!vs.count(v)) fail("InvalidInput", "weight for unknown vertex " + v);
    if (w < 1) fail("InvalidInput", "weight of vertex " + v + " must be >= 1");
  }
}

bool WeightQuiver::has_vertex(const std::string& v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const Arrow* WeightQuiver::find_arrow(const std::string& id) const {
  for (const auto& a : arrows)
    if (a.id == id) return &a;
  return nullptr;
}

int WeightQuiver::weight(const std::string& v) const {
  auto it = weights.find(v);
  return it == weights.end() ? 1 : it->second;
}

// ---------------------------------------------------------------------------
// Path
// ---------------------------------------------------------------------------

Path Path::trivial(std::string v) { return Path{std::move(v), {}}; }

Path Path::of(const WeightQuiver& q, const std::vector<std::string>& arrow_ids) {
  if (arrow_ids.empty()) fail("InvalidInput", "Path::of needs at least one arrow");
  Path p;
  p.arrows = arrow_ids;
  const Arrow* prev = nullptr;
  for (const auto& id : arrow_ids) {
    const Arrow* a = q.find_arrow(id);
    if (!a) fail("InvalidRelation", "unknown arrow " + id);
    if (prev && prev->tgt != a->src)
      fail("InvalidRelation", "arrows " + prev->id + " and " + a->id + " do not compose");
    prev = a;
  }
  p.vertex = q.find_arrow(arrow_ids.front())->src;
  return p;
}

std::string Path::target(const WeightQuiver& q) const {
  if (arrows.empty()) return vertex;
  return q.find_arrow(arrows.back())->tgt;
}

std::string Path::label() const {
  if (arrows.empty()) return "e" + vertex;
  return join(arrows, "");
}

bool Path::operator<(const Path& o) const {
  if (length() != o.length()) return length() < o.length();
  if (arrows != o.arrows) return arrows < o.arrows;
  return vertex < o.vertex;
}

std::vector<Path> enumerate_paths(const WeightQuiver& q, int max_len) {
  if (max_len < 0) fail("InvalidInput", "max_len must be >= 0");
  q.validate();
  std::vector<Path> out;
  for (const auto& v : q.vertices) out.push_back(Path::trivial(v));
  // Trivial paths follow vertex order; longer paths are generated length by
  // length, lexicographically by arrow-id sequence.
  std::vector<Path> frontier;
  std::vector<Arrow> sorted = q.arrows;
  std::sort(sorted.begin(), sorted.end(), [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  for (const auto& a : sorted) frontier.push_back(Path{a.src, {a.id}});
  std::sort(frontier.begin(), frontier.end());
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<Path> next;
    for (const auto& p : frontier) {
      const std::string tip = p.target(q);
      for (const auto& a : sorted) {
        if (a.src != tip) continue;
        Path e = p;
        e.arrows.push_back(a.id);
        next.push_back(std::move(e));
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// StructureConstantAlgebra and elements
// ---------------------------------------------------------------------------

int StructureConstantAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_labels[i] == label) return i;
  return -1;
}

void StructureConstantAlgebra::validate_shape() const {
  const std::size_t n = basis_labels.size();
  if (n == 0) fail("InvalidInput", "algebra has empty basis");
  std::set<std::string> labels(basis_labels.begin(), basis_labels.end());
  if (labels.size() != n) fail("InvalidInput", "duplicate basis labels");
  if (mult_table.size() != n) fail("InvalidInput", "mult_table row count != dim");
  for (const auto& row : mult_table) {
    if (row.size() != n) fail("InvalidInput", "mult_table column count != dim");
    for (const auto& cell : row)
      if (cell.size() != n) fail("InvalidInput", "mult_table entry length != dim");
  }
  if (unit.size() != n) fail("InvalidInput", "unit vector length != dim");
  for (const auto& idem : idempotents)
    if (idem.size() != n) fail("InvalidInput", "idempotent length != dim");
}

AlgebraPtr make_algebra(StructureConstantAlgebra alg) {
  alg.validate_shape();
  return std::make_shared<const StructureConstantAlgebra>(std::move(alg));
}

AlgebraPtr scalar_real_algebra() {
  static const AlgebraPtr r = [] {
    StructureConstantAlgebra alg;
    alg.name = "R";
    alg.basis_labels = {"1"};
    alg.mult_table = {{{1.0}}};
    alg.unit = {1.0};
    alg.idempotents = {{1.0}};
    return make_algebra(std::move(alg));
  }();
  return r;
}

AlgebraElement element(AlgebraPtr alg, std::vector<double> coeffs) {
  if (!alg) fail("InvalidInput", "null algebra");
  if (static_cast<int>(coeffs.size()) != alg->dim())
    fail("InvalidInput", "coefficient length does not match algebra dimension");
  return AlgebraElement{std::move(alg), std::move(coeffs)};
}

AlgebraElement basis_element(const AlgebraPtr& alg, int i) {
  std::vector<double> c(alg->dim(), 0.0);
  c.at(i) = 1.0;
  return AlgebraElement{alg, std::move(c)};
}

AlgebraElement zero_element(const AlgebraPtr& alg) {
  return AlgebraElement{alg, std::vector<double>(alg->dim(), 0.0)};
}

AlgebraElement unit_element(const AlgebraPtr& alg) { return AlgebraElement{alg, alg->unit}; }

namespace {

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra != y.algebra) fail("AlgebraMismatch", "elements live over different algebras");
}

}  // namespace

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += y.coeffs[i];
  return out;
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= y.coeffs[i];
  return out;
}

AlgebraElement scale(double k, const AlgebraElement& x) {
  AlgebraElement out = x;
  for (auto& c : out.coeffs) c *= k;
  return out;
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  const auto& alg = *x.algebra;
  const int n = alg.dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double xi = x.coeffs[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double yj = y.coeffs[j];
      if (yj == 0.0) continue;
      const auto& cell = alg.mult_table[i][j];
      const double w = xi * yj;
      for (int k = 0; k < n; ++k) out[k] += w * cell[k];
    }
  }
  return AlgebraElement{x.algebra, std::move(out)};
}

double max_abs(const AlgebraElement& x) {
  double m = 0.0;
  for (double c : x.coeffs) m = std::max(m, std::abs(c));
  return m;
}

double max_abs_diff(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  double m = 0.0;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    m = std::max(m, std::abs(x.coeffs[i] - y.coeffs[i]));
  return m;
}

// ---------------------------------------------------------------------------
// AlgebraHom
// ---------------------------------------------------------------------------

void AlgebraHom::validate_shape() const {
  if (!domain || !codomain) fail("InvalidInput", "hom with null endpoint");
  if (static_cast<int>(matrix.size()) != codomain->dim())
    fail("InvalidInput", "hom matrix row count != codomain dim");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != domain->dim())
      fail("InvalidInput", "hom matrix column count != domain dim");
}

AlgebraHom identity_hom(const AlgebraPtr& a) {
  const int n = a->dim();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return AlgebraHom{a, a, std::move(m)};
}

AlgebraHom zero_hom(const AlgebraPtr& domain, const AlgebraPtr& codomain) {
  return AlgebraHom{domain, codomain,
                    std::vector<std::vector<double>>(codomain->dim(),
                                                     std::vector<double>(domain->dim(), 0.0))};
}

AlgebraElement apply_hom(const AlgebraHom& h, const AlgebraElement& x) {
  if (x.algebra != h.domain) fail("AlgebraMismatch", "element not in hom domain");
  const int rows = h.codomain->dim();
  const int cols = h.domain->dim();
  std::vector<double> out(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (int c = 0; c < cols; ++c) acc += h.matrix[r][c] * x.coeffs[c];
    out[r] = acc;
  }
  return AlgebraElement{h.codomain, std::move(out)};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

void VerifyReport::record(const std::string& invariant, const std::string& where, double residual,
                          double tol) {
  max_residual = std::max(max_residual, residual);
  if (residual > tol) violations.push_back(Violation{invariant, where, residual});
}

namespace {

// (e_i e_j) e_k and e_i (e_j e_k) expanded through the table.
double associativity_residual(const StructureConstantAlgebra& alg, int i, int j, int k) {
  const int n = alg.dim();
  const auto& ij = alg.mult_table[i][j];
  const auto& jk = alg.mult_table[j][k];
  double residual = 0.0;
  for (int t = 0; t < n; ++t) {
    double lhs = 0.0, rhs = 0.0;
    for (int m = 0; m < n; ++m) {
      if (ij[m] != 0.0) lhs += ij[m] * alg.mult_table[m][k][t];
      if (jk[m] != 0.0) rhs += jk[m] * alg.mult_table[i][m][t];
    }
    residual = std::max(residual, std::abs(lhs - rhs));
  }
  return residual;
}

}  // namespace

VerifyReport verify_algebra(const StructureConstantAlgebra& alg, double tol) {
  alg.validate_shape();
  VerifyReport report;
  const int n = alg.dim();
  const AlgebraPtr tmp = std::make_shared<const StructureConstantAlgebra>(alg);
  const AlgebraElement one = unit_element(tmp);
  for (int i = 0; i < n; ++i) {
    const AlgebraElement ei = basis_element(tmp, i);
    report.record("unitality-left", "1*" + alg.basis_labels[i], max_abs_diff(mul(one, ei), ei), tol);
    report.record("unitality-right", alg.basis_labels[i] + "*1", max_abs_diff(mul(ei, one), ei), tol);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double r = associativity_residual(alg, i, j, k);
        if (r > tol) {
          std::ostringstream where;
          where << "(" << alg.basis_labels[i] << "," << alg.basis_labels[j] << ","
                << alg.basis_labels[k] << ")";
          report.record("associativity", where.str(), r, tol);
        } else {
          report.max_residual = std::max(report.max_residual, r);
        }
      }
  if (!alg.idempotents.empty()) {
    std::vector<double> sum(n, 0.0);
    for (std::size_t i = 0; i < alg.idempotents.size(); ++i) {
      const AlgebraElement ei{tmp, alg.idempotents[i]};
      for (int t = 0; t < n; ++t) sum[t] += ei.coeffs[t];
      for (std::size_t j = 0; j < alg.idempotents.size(); ++j) {
        const AlgebraElement ej{tmp, alg.idempotents[j]};
        const AlgebraElement prod = mul(ei, ej);
        const AlgebraElement expect = (i == j) ? ei : zero_element(tmp);
        std::ostringstream where;
        where << "idem(" << i << "," << j << ")";
        report.record("idempotent-orthogonality", where.str(), max_abs_diff(prod, expect), tol);
      }
    }
    double r = 0.0;
    for (int t = 0; t < n; ++t) r = std::max(r, std::abs(sum[t] - alg.unit[t]));
    report.record("idempotent-sum", "sum(eps)=1", r, tol);
  }
  return report;
}

VerifyReport verify_hom(const AlgebraHom& h, double tol) {
  h.validate_shape();
  VerifyReport report;
  const int n = h.domain->dim();
  report.record("unitality", "h(1)=1",
                max_abs_diff(apply_hom(h, unit_element(h.domain)), unit_element(h.codomain)), tol);
  for (int i = 0; i < n; ++i) {
    const AlgebraElement hi = apply_hom(h, basis_element(h.domain, i));
    for (int j = 0; j < n; ++j) {
      const AlgebraElement hj = apply_hom(h, basis_element(h.domain, j));
      const AlgebraElement lhs =
          apply_hom(h, AlgebraElement{h.domain, h.domain->mult_table[i][j]});
      const double r = max_abs_diff(lhs, mul(hi, hj));
      if (r > tol) {
        std::ostringstream where;
        where << "(" << h.domain->basis_labels[i] << "," << h.domain->basis_labels[j] << ")";
        report.record("multiplicativity", where.str(), r, tol);
      } else {
        report.max_residual = std::max(report.max_residual, r);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Constructors from quivers
// ---------------------------------------------------------------------------

namespace {

bool contains_subword(const std::vector<std::string>& word, const std::vector<std::string>& sub) {
  if (sub.empty() || sub.size() > word.size()) return false;
  for (std::size_t i = 0; i + sub.size() <= word.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < sub.size(); ++j)
      if (word[i + j] != sub[j]) {
        hit = false;
        break;
      }
    if (hit) return true;
  }
  return false;
}

std::vector<std::vector<double>> eps_vectors(const StructureConstantAlgebra& alg,
                                             const std::vector<Path>& basis) {
  std::vector<std::vector<double>> idems;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_trivial()) continue;
    std::vector<double> v(alg.dim(), 0.0);
    v[i] = 1.0;
    idems.push_back(std::move(v));
  }
  return idems;
}

}  // namespace

AlgebraPtr algebra_from_admissible_quiver(const WeightQuiver& q,
                                          const std::vector<Path>& monomial_relations,
                                          int nilpotency_cutoff, std::string name) {
  q.validate();
  if (nilpotency_cutoff < 1) fail("InvalidInput", "nilpotency_cutoff must be >= 1");
  for (const auto& rel : monomial_relations) {
    if (rel.is_trivial()) fail("InvalidRelation", "trivial path cannot be a monomial relation");
    Path::of(q, rel.arrows);  // throws InvalidRelation when not composable
  }
  auto in_ideal = [&](const std::vector<std::string>& word) {
    for (const auto& rel : monomial_relations)
      if (contains_subword(word, rel.arrows)) return true;
    return false;
  };

  // Every composable path of length == cutoff must already lie in the ideal,
  // otherwise the truncation at the cutoff would change the algebra.
  const std::vector<Path> up_to_cutoff = enumerate_paths(q, nilpotency_cutoff);
  std::vector<Path> basis;
  for (const auto& p : up_to_cutoff) {
    if (static_cast<int>(p.length()) == nilpotency_cutoff) {
      if (!in_ideal(p.arrows))
        fail("CutoffTooSmall", "path " + p.label() + " of length " +
                                   std::to_string(nilpotency_cutoff) + " survives reduction");
      continue;
    }
    if (!in_ideal(p.arrows)) basis.push_back(p);
  }

  const int n = static_cast<int>(basis.size());
  std::map<std::vector<std::string>, int> index;  // keyed by (source, arrows) via label trick
  std::map<std::string, int> trivial_index;
  for (int i = 0; i < n; ++i) {
    if (basis[i].is_trivial())
      trivial_index[basis[i].vertex] = i;
    else
      index[basis[i].arrows] = i;
  }

  StructureConstantAlgebra alg;
  alg.name = name.empty() ? "quiver-algebra" : std::move(name);
  for (const auto& p : basis) alg.basis_labels.push_back(p.label());
  alg.mult_table.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (basis[i].target(q) != basis[j].source()) continue;
      std::vector<std::string> word = basis[i].arrows;
      word.insert(word.end(), basis[j].arrows.begin(), basis[j].arrows.end());
      if (static_cast<int>(word.size()) >= nilpotency_cutoff || in_ideal(word)) continue;
      int t;
      if (word.empty())
        t = trivial_index.at(basis[i].vertex);
      else {
        auto it = index.find(word);
        if (it == index.end()) continue;  // unreachable: survivors are closed under products
        t = it->second;
      }
      alg.mult_table[i][j][t] = 1.0;
    }
  }
  alg.unit.assign(n, 0.0);
  for (const auto& [v, idx] : trivial_index) {
    (void)v;
    alg.unit[idx] = 1.0;
  }
  alg.idempotents = eps_vectors(alg, basis);
  return make_algebra(std::move(alg));
}

namespace {

struct Term {
  std::string source;
  std::vector<std::string> word;
  bool operator<(const Term& o) const {
    if (word != o.word) return word < o.word;
    return source < o.source;
  }
};

}  // namespace

AlgebraPtr algebra_from_rewrite_system(const WeightQuiver& q, const RewriteSystem& rw,
                                       int max_reduction_steps, std::string name) {
  q.validate();
  for (const auto& rule : rw.rules) {
    if (rule.lhs.is_trivial()) fail("InvalidRelation", "rewrite rule with trivial lhs");
    Path lhs = Path::of(q, rule.lhs.arrows);
    for (const auto& [p, coeff] : rule.rhs) {
      (void)coeff;
      const Path rhs = p.is_trivial() ? p : Path::of(q, p.arrows);
      if (rhs.is_trivial() && !q.has_vertex(rhs.vertex))
        fail("InvalidRelation", "rhs trivial path at unknown vertex " + rhs.vertex);
      if (rhs.source() != lhs.source() || rhs.target(q) != lhs.target(q))
        fail("InvalidRelation", "rhs endpoints differ from lhs for rule " + lhs.label());
    }
  }
  std::vector<Path> basis = rw.normal_form_basis;
  for (auto& p : basis)
    if (!p.is_trivial()) p = Path::of(q, p.arrows);
  const int n = static_cast<int>(basis.size());
  if (n == 0) fail("InvalidInput", "empty normal-form basis");

  std::map<Term, int> basis_index;
  for (int i = 0; i < n; ++i) basis_index[Term{basis[i].source(), basis[i].arrows}] = i;

  // Reduces coeff * word to a combination of normal-form basis words by
  // repeatedly replacing the first matching lhs subword.
  auto reduce = [&](const Term& start) {
    std::map<Term, double> pending{{start, 1.0}};
    std::map<Term, double> done;
    int steps = 0;
    while (!pending.empty()) {
      auto it = pending.begin();
      Term term = it->first;
      double coeff = it->second;
      pending.erase(it);
      if (coeff == 0.0) continue;
      bool rewritten = false;
      for (const auto& rule : rw.rules) {
        const auto& lhs = rule.lhs.arrows;
        if (lhs.size() > term.word.size()) continue;
        for (std::size_t pos = 0; pos + lhs.size() <= term.word.size(); ++pos) {
          bool hit = true;
          for (std::size_t k = 0; k < lhs.size(); ++k)
            if (term.word[pos + k] != lhs[k]) {
              hit = false;
              break;
            }
          if (!hit) continue;
          if (++steps > max_reduction_steps)
            fail("NonTerminating", "reduction exceeded " + std::to_string(max_reduction_steps) +
                                       " steps");
          for (const auto& [rp, rc] : rule.rhs) {
            Term next;
            next.source = term.source;
            next.word.assign(term.word.begin(), term.word.begin() + pos);
            next.word.insert(next.word.end(), rp.arrows.begin(), rp.arrows.end());
            next.word.insert(next.word.end(), term.word.begin() + pos + lhs.size(),
                             term.word.end());
            pending[next] += coeff * rc;
          }
          rewritten = true;
          break;
        }
        if (rewritten) break;
      }
      if (!rewritten) done[term] += coeff;
    }
    return done;
  };

  StructureConstantAlgebra alg;
  alg.name = name.empty() ? "rewrite-algebra" : std::move(name);
  for (const auto& p : basis) alg.basis_labels.push_back(p.label());
  alg.mult_table.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (basis[i].target(q) != basis[j].source()) continue;
      Term prod;
      prod.source = basis[i].source();
      prod.word = basis[i].arrows;
      prod.word.insert(prod.word.end(), basis[j].arrows.begin(), basis[j].arrows.end());
      for (const auto& [term, coeff] : reduce(prod)) {
        if (std::abs(coeff) < 1e-15) continue;
        auto it = basis_index.find(term);
        if (it == basis_index.end())
          fail("NotClosed", "product " + basis[i].label() + "*" + basis[j].label() +
                                " reduces outside the declared basis");
        alg.mult_table[i][j][it->second] = coeff;
      }
    }
  }
  alg.unit.assign(n, 0.0);
  bool any_eps = false;
  for (int i = 0; i < n; ++i) {
    if (basis[i].is_trivial()) {
      alg.unit[i] = 1.0;
      any_eps = true;
    }
  }
  if (!any_eps) fail("InvalidInput", "normal-form basis lacks the trivial paths forming the unit");
  alg.idempotents = eps_vectors(alg, basis);

  const VerifyReport check = verify_algebra(alg, kTolAlg);
  if (!check.ok()) {
    fail("AssociativityFailure", "induced table failed verification (" +
                                     check.violations.front().invariant + " at " +
                                     check.violations.front().where + ")");
  }
  return make_algebra(std::move(alg));
}

}  // namespace qint
