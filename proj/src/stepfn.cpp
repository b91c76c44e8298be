#include "qint/stepfn.hpp"

#include <algorithm>
#include <cmath>

#include "qint/errors.hpp"

namespace qint {

// ---------------------------------------------------------------------------
// Domain and boxes
// ---------------------------------------------------------------------------

void DomainBoxSpec::validate() const {
  if (dim < 1) fail("InvalidInput", "domain dimension must be >= 1");
  if (!(lo < hi)) fail("InvalidInput", "domain needs lo < hi");
  if (!(lo < xi && xi < hi)) fail("InvalidInput", "split point must satisfy lo < xi < hi");
}

double DomainBoxSpec::total_measure() const { return std::pow(hi - lo, dim); }

double DomainBoxSpec::kappa(bool upper, double t) const {
  // Endpoints map exactly so adjacent cells tile without rounding gaps.
  if (t == lo) return upper ? xi : lo;
  if (t == hi) return upper ? hi : xi;
  return upper ? xi + (t - lo) * (hi - xi) / (hi - lo) : lo + (t - lo) * (xi - lo) / (hi - lo);
}

double DomainBoxSpec::kappa_inv(bool upper, double t) const {
  if (upper) {
    if (t == xi) return lo;
    if (t == hi) return hi;
    return lo + (t - xi) * (hi - lo) / (hi - xi);
  }
  if (t == lo) return lo;
  if (t == xi) return hi;
  return lo + (t - lo) * (hi - lo) / (xi - lo);
}

DomainPtr make_domain(int dim, double lo, double hi, double xi) {
  DomainBoxSpec d{dim, lo, hi, xi};
  d.validate();
  return std::make_shared<const DomainBoxSpec>(d);
}

bool AxisInterval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

bool AxisInterval::contains(double t) const {
  if (t < lo || t > hi) return false;
  if (t == lo && !lo_closed) return false;
  if (t == hi && !hi_closed) return false;
  return true;
}

double Box::measure() const {
  double m = 1.0;
  for (const auto& a : axes) m *= (a.hi - a.lo);
  return m;
}

bool Box::contains(const std::vector<double>& x) const {
  if (x.size() != axes.size()) fail("InvalidInput", "point dimension != box dimension");
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (!axes[k].contains(x[k])) return false;
  return true;
}

Box full_box(const DomainBoxSpec& d) {
  Box b;
  b.axes.assign(d.dim, AxisInterval{d.lo, d.hi, true, true});
  return b;
}

std::optional<AxisInterval> intersect(const AxisInterval& a, const AxisInterval& b) {
  AxisInterval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (r.empty()) return std::nullopt;
  return r;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  if (a.axes.size() != b.axes.size()) fail("InvalidInput", "box dimension mismatch");
  Box r;
  r.axes.reserve(a.axes.size());
  for (std::size_t k = 0; k < a.axes.size(); ++k) {
    auto s = intersect(a.axes[k], b.axes[k]);
    if (!s) return std::nullopt;
    r.axes.push_back(*s);
  }
  return r;
}

bool boxes_disjoint(const Box& a, const Box& b) { return !intersect(a, b).has_value(); }

namespace {

// a minus b on one axis: the parts of a strictly left and right of b.
struct AxisSplit {
  std::optional<AxisInterval> left, right, middle;
};

AxisSplit split_axis(const AxisInterval& a, const AxisInterval& b) {
  AxisSplit s;
  const auto mid = intersect(a, b);
  if (!mid) {
    s.left = a;  // no overlap: everything is "outside"
    return s;
  }
  s.middle = *mid;
  AxisInterval left{a.lo, mid->lo, a.lo_closed, !mid->lo_closed};
  if (!left.empty()) s.left = left;
  AxisInterval right{mid->hi, a.hi, !mid->hi_closed, a.hi_closed};
  if (!right.empty()) s.right = right;
  return s;
}

}  // namespace

std::vector<Box> subtract(const Box& a, const Box& b) {
  if (boxes_disjoint(a, b)) return {a};
  std::vector<Box> out;
  Box rest = a;  // shrinks axis by axis to the overlap slab
  for (std::size_t k = 0; k < a.axes.size(); ++k) {
    const AxisSplit s = split_axis(rest.axes[k], b.axes[k]);
    if (s.left) {
      Box piece = rest;
      piece.axes[k] = *s.left;
      out.push_back(std::move(piece));
    }
    if (s.right) {
      Box piece = rest;
      piece.axes[k] = *s.right;
      out.push_back(std::move(piece));
    }
    rest.axes[k] = *s.middle;
  }
  return out;
}

std::vector<Box> subtract_all(const Box& a, const std::vector<Box>& bs) {
  std::vector<Box> current{a};
  for (const auto& b : bs) {
    std::vector<Box> next;
    for (const auto& piece : current) {
      auto parts = subtract(piece, b);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

// ---------------------------------------------------------------------------
// StepFunction basics
// ---------------------------------------------------------------------------

StepFunction constant_step(const DomainPtr& d, const AlgebraElement& b) {
  StepFunction f;
  f.domain = d;
  f.algebra = b.algebra;
  f.pieces.emplace_back(full_box(*d), b.coeffs);
  return f;
}

StepFunction zero_step(const DomainPtr& d, const AlgebraPtr& b) {
  StepFunction f;
  f.domain = d;
  f.algebra = b;
  return f;
}

void check_disjoint_pieces(const StepFunction& f) {
  for (std::size_t i = 0; i < f.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < f.pieces.size(); ++j)
      if (!boxes_disjoint(f.pieces[i].first, f.pieces[j].first))
        fail("InvalidInput", "step-function pieces overlap");
}

AlgebraElement evaluate(const StepFunction& f, const std::vector<double>& x) {
  const auto& d = *f.domain;
  if (static_cast<int>(x.size()) != d.dim) fail("InvalidInput", "point dimension != domain dim");
  for (double t : x)
    if (t < d.lo || t > d.hi) fail("OutOfDomain", "evaluation point outside the domain box");
  for (const auto& [box, coeffs] : f.pieces)
    if (box.contains(x)) return AlgebraElement{f.algebra, coeffs};
  return zero_element(f.algebra);
}

namespace {

void require_compatible(const StepFunction& f, const StepFunction& g) {
  if (f.algebra != g.algebra) fail("AlgebraMismatch", "step functions over different algebras");
  const auto& a = *f.domain;
  const auto& b = *g.domain;
  if (a.dim != b.dim || a.lo != b.lo || a.hi != b.hi || a.xi != b.xi)
    fail("DomainMismatch", "step functions over different domains");
}

}  // namespace

StepFunction sf_add(const StepFunction& f, const StepFunction& g) {
  require_compatible(f, g);
  StepFunction out;
  out.domain = f.domain;
  out.algebra = f.algebra;

  std::vector<Box> gboxes, fboxes;
  for (const auto& p : g.pieces) gboxes.push_back(p.first);
  for (const auto& p : f.pieces) fboxes.push_back(p.first);

  for (const auto& [box, coeffs] : f.pieces)
    for (auto& part : subtract_all(box, gboxes)) out.pieces.emplace_back(std::move(part), coeffs);
  for (const auto& [box, coeffs] : g.pieces)
    for (auto& part : subtract_all(box, fboxes)) out.pieces.emplace_back(std::move(part), coeffs);
  for (const auto& [fbox, fc] : f.pieces) {
    for (const auto& [gbox, gc] : g.pieces) {
      auto mid = intersect(fbox, gbox);
      if (!mid) continue;
      std::vector<double> sum = fc;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += gc[i];
      out.pieces.emplace_back(std::move(*mid), std::move(sum));
    }
  }
  return out;
}

StepFunction sf_scale(double k, const StepFunction& f) {
  StepFunction out = f;
  for (auto& [box, coeffs] : out.pieces) {
    (void)box;
    for (auto& c : coeffs) c *= k;
  }
  return out;
}

StepFunction module_action(const AlgebraElement& a, const StepFunction& f,
                           const AlgebraElement& b, const AlgebraHom& sigma) {
  if (a.algebra != sigma.domain) fail("AlgebraMismatch", "left factor not in sigma domain");
  if (b.algebra != f.algebra || sigma.codomain != f.algebra)
    fail("AlgebraMismatch", "right factor or sigma codomain differs from the value algebra");
  const AlgebraElement sa = apply_hom(sigma, a);
  StepFunction out = f;
  for (auto& [box, coeffs] : out.pieces) {
    (void)box;
    const AlgebraElement c{f.algebra, coeffs};
    coeffs = mul(mul(sa, c), b).coeffs;
  }
  return out;
}

double step_norm(const StepFunction& f, const PNormSpec& b_spec) {
  if (b_spec.basis_norm.algebra != f.algebra)
    fail("AlgebraMismatch", "norm spec over a different algebra");
  double acc = 0.0;
  for (const auto& [box, coeffs] : f.pieces) {
    const double bn = algebra_norm(b_spec, AlgebraElement{f.algebra, coeffs});
    const double term = bn * box.measure();
    if (term != 0.0) acc += std::pow(term, b_spec.p);
  }
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / b_spec.p);
}

double eu_norm(const StepFunction& f, const PNormSpec& b_spec) {
  const double total = f.domain->total_measure();
  double acc = 0.0;
  for (const auto& [box, coeffs] : f.pieces) {
    const double bn = algebra_norm(b_spec, AlgebraElement{f.algebra, coeffs});
    const double term = bn * (box.measure() / total);
    if (term != 0.0) acc += std::pow(term, b_spec.p);
  }
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / b_spec.p);
}

// ---------------------------------------------------------------------------
// Juxtaposition
// ---------------------------------------------------------------------------

Box sub_box(const DomainBoxSpec& d, unsigned signature) {
  Box b;
  b.axes.reserve(d.dim);
  for (int k = 0; k < d.dim; ++k) {
    const bool upper = (signature >> k) & 1u;
    // Interior split faces are half-open; only the global top face is closed.
    if (upper)
      b.axes.push_back(AxisInterval{d.xi, d.hi, true, true});
    else
      b.axes.push_back(AxisInterval{d.lo, d.xi, true, false});
  }
  return b;
}

double sub_box_measure(const DomainBoxSpec& d, unsigned signature) {
  double m = 1.0;
  for (int k = 0; k < d.dim; ++k) m *= ((signature >> k) & 1u) ? (d.hi - d.xi) : (d.xi - d.lo);
  return m;
}

StepFunction gamma_xi(const std::vector<StepFunction>& fs) {
  if (fs.empty()) fail("ArityMismatch", "gamma_xi needs 2^dim inputs");
  const auto& d = *fs.front().domain;
  const std::size_t arity = std::size_t(1) << d.dim;
  if (fs.size() != arity)
    fail("ArityMismatch", "gamma_xi needs exactly " + std::to_string(arity) + " inputs");
  for (const auto& f : fs) require_compatible(fs.front(), f);

  StepFunction out;
  out.domain = fs.front().domain;
  out.algebra = fs.front().algebra;
  for (unsigned sig = 0; sig < arity; ++sig) {
    const Box owner = sub_box(d, sig);
    for (const auto& [box, coeffs] : fs[sig].pieces) {
      Box image;
      image.axes.reserve(d.dim);
      for (int k = 0; k < d.dim; ++k) {
        const bool upper = (sig >> k) & 1u;
        const auto& ax = box.axes[k];
        image.axes.push_back(AxisInterval{d.kappa(upper, ax.lo), d.kappa(upper, ax.hi),
                                          ax.lo_closed, ax.hi_closed});
      }
      auto owned = intersect(image, owner);
      if (!owned) continue;
      out.pieces.emplace_back(std::move(*owned), coeffs);
    }
  }
  return out;
}

std::vector<StepFunction> gamma_xi_inverse(const StepFunction& f) {
  const auto& d = *f.domain;
  const std::size_t arity = std::size_t(1) << d.dim;
  std::vector<StepFunction> out(arity, zero_step(f.domain, f.algebra));

  std::vector<Box> owners;
  owners.reserve(arity);
  for (unsigned sig = 0; sig < arity; ++sig) owners.push_back(sub_box(d, sig));

  for (const auto& [box, coeffs] : f.pieces) {
    int home = -1;
    for (unsigned sig = 0; sig < arity; ++sig) {
      auto inside = intersect(box, owners[sig]);
      if (!inside) continue;
      // Piece must lie wholly inside one ownership cell.
      bool whole = true;
      for (int k = 0; k < d.dim; ++k) {
        const auto& a = box.axes[k];
        const auto& o = owners[sig].axes[k];
        if (a.lo < o.lo || a.hi > o.hi || (a.lo == o.lo && a.lo_closed && !o.lo_closed) ||
            (a.hi == o.hi && a.hi_closed && !o.hi_closed)) {
          whole = false;
          break;
        }
      }
      if (!whole) fail("NotAligned", "piece straddles a sub-box boundary");
      home = static_cast<int>(sig);
      break;
    }
    if (home < 0) fail("NotAligned", "empty-intersection piece");  // unreachable for valid pieces
    Box back;
    back.axes.reserve(d.dim);
    for (int k = 0; k < d.dim; ++k) {
      const bool upper = (home >> k) & 1u;
      const auto& ax = box.axes[k];
      AxisInterval r{d.kappa_inv(upper, ax.lo), d.kappa_inv(upper, ax.hi), ax.lo_closed,
                     ax.hi_closed};
      // A lower cell ending open exactly at xi covers the cell's whole top;
      // the missing endpoint is ownership bookkeeping, so the preimage is
      // closed at hi (this is what makes gamma(inverse(1)) == 1 pointwise).
      if (!upper && ax.hi == d.xi && !ax.hi_closed) {
        r.hi = d.hi;
        r.hi_closed = true;
      }
      back.axes.push_back(r);
    }
    out[home].pieces.emplace_back(std::move(back), coeffs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling into E_u
// ---------------------------------------------------------------------------

std::vector<AxisInterval> axis_cells(const DomainBoxSpec& d, int u) {
  if (u < 0) fail("InvalidInput", "refinement level must be >= 0");
  std::vector<std::pair<double, double>> cells{{d.lo, d.hi}};
  for (int level = 0; level < u; ++level) {
    std::vector<std::pair<double, double>> next;
    next.reserve(cells.size() * 2);
    for (const auto& [lo, hi] : cells) next.emplace_back(d.kappa(false, lo), d.kappa(false, hi));
    for (const auto& [lo, hi] : cells) next.emplace_back(d.kappa(true, lo), d.kappa(true, hi));
    cells = std::move(next);
  }
  std::vector<AxisInterval> out;
  out.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    out.push_back(AxisInterval{cells[i].first, cells[i].second, true, i + 1 == cells.size()});
  return out;
}

void for_each_Eu_cell(const DomainBoxSpec& d, int u, SampleRule rule,
                      const std::function<void(const std::vector<double>&, double)>& visit,
                      std::uint64_t cell_budget) {
  d.validate();
  if (u < 0) fail("InvalidInput", "refinement level must be >= 0");
  const double cells_ld = std::pow(2.0, double(d.dim) * u);
  if (cells_ld > static_cast<double>(cell_budget))
    fail("BudgetExceeded", "level needs " + std::to_string(cells_ld) + " cells, budget " +
                               std::to_string(cell_budget));
  const std::vector<AxisInterval> cells = axis_cells(d, u);
  const std::size_t per_axis = cells.size();
  std::vector<std::size_t> idx(d.dim, 0);
  std::vector<double> point(d.dim, 0.0);
  auto sample_of = [&](const AxisInterval& c) {
    return rule == SampleRule::midpoint ? (c.lo + c.hi) / 2.0 : c.lo;
  };
  while (true) {
    double measure = 1.0;
    for (int k = 0; k < d.dim; ++k) {
      const auto& c = cells[idx[k]];
      point[k] = sample_of(c);
      measure *= c.length();
    }
    visit(point, measure);
    int k = 0;
    while (k < d.dim && ++idx[k] == per_axis) idx[k++] = 0;  // axis 0 varies fastest
    if (k == d.dim) break;
  }
}

StepFunction sample_to_Eu(const FunctionHandle& h, const DomainPtr& d, int u, SampleRule rule,
                          std::uint64_t cell_budget) {
  StepFunction out = zero_step(d, h.codomain);
  const std::vector<AxisInterval> cells = axis_cells(*d, u);
  const std::size_t per_axis = cells.size();
  const double cells_ld = std::pow(double(per_axis), d->dim);
  if (cells_ld > static_cast<double>(cell_budget)) fail("BudgetExceeded", "cell budget exceeded");
  std::vector<std::size_t> idx(d->dim, 0);
  std::vector<double> point(d->dim, 0.0);
  while (true) {
    Box box;
    box.axes.reserve(d->dim);
    for (int k = 0; k < d->dim; ++k) {
      const auto& c = cells[idx[k]];
      box.axes.push_back(c);
      point[k] = rule == SampleRule::midpoint ? (c.lo + c.hi) / 2.0 : c.lo;
    }
    std::vector<double> value = h.fn(point);
    if (static_cast<int>(value.size()) != h.codomain->dim())
      fail("InvalidInput", "handle returned wrong coefficient length");
    out.pieces.emplace_back(std::move(box), std::move(value));
    int k = 0;
    while (k < d->dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d->dim) break;
  }
  return out;
}

}  // namespace qint
