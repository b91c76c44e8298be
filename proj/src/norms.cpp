#include "qint/norms.hpp"

#include <algorithm>
#include <cmath>

#include "qint/errors.hpp"

namespace qint {

BasisNormFn BasisNormFn::ones(AlgebraPtr alg) {
  BasisNormFn fn;
  fn.values.assign(alg->dim(), 1.0);
  fn.algebra = std::move(alg);
  return fn;
}

void BasisNormFn::validate() const {
  if (!algebra) fail("InvalidInput", "basis norm without algebra");
  if (static_cast<int>(values.size()) != algebra->dim())
    fail("InvalidInput", "basis norm length != algebra dim");
  for (double v : values)
    if (!(v >= 0.0)) fail("InvalidInput", "basis norm values must be >= 0");
}

void PNormSpec::validate() const {
  if (!(p >= 1.0)) fail("InvalidInput", "p must be >= 1");
  basis_norm.validate();
}

PNormSpec default_pnorm(AlgebraPtr alg, double p) {
  return PNormSpec{p, BasisNormFn::ones(std::move(alg))};
}

double algebra_norm(const PNormSpec& spec, const AlgebraElement& x) {
  if (spec.basis_norm.algebra != x.algebra)
    fail("AlgebraMismatch", "norm spec and element live over different algebras");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    const double term = std::abs(x.coeffs[i]) * spec.basis_norm.values[i];
    if (term != 0.0) acc += std::pow(term, spec.p);
  }
  return acc == 0.0 ? 0.0 : std::pow(acc, 1.0 / spec.p);
}

double seminorm_sigma(const AlgebraHom& h, const PNormSpec& codomain_spec,
                      const AlgebraElement& a) {
  if (a.algebra != h.domain) fail("AlgebraMismatch", "element not in hom domain");
  return algebra_norm(codomain_spec, apply_hom(h, a));
}

std::vector<std::vector<double>> kernel_basis(const AlgebraHom& h, double tol) {
  h.validate_shape();
  const int rows = h.codomain->dim();
  const int cols = h.domain->dim();
  std::vector<std::vector<double>> m = h.matrix;

  std::vector<int> pivot_col_of_row(rows, -1);
  std::vector<bool> is_pivot_col(cols, false);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int best = -1;
    double best_abs = tol;
    for (int r = rank; r < rows; ++r) {
      if (std::abs(m[r][c]) > best_abs) {
        best = r;
        best_abs = std::abs(m[r][c]);
      }
    }
    if (best < 0) continue;
    std::swap(m[rank], m[best]);
    const double inv = 1.0 / m[rank][c];
    for (int cc = 0; cc < cols; ++cc) m[rank][cc] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = m[r][c];
      if (f == 0.0) continue;
      for (int cc = 0; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    pivot_col_of_row[rank] = c;
    is_pivot_col[c] = true;
    ++rank;
  }

  std::vector<std::vector<double>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot_col[c]) continue;
    std::vector<double> v(cols, 0.0);
    v[c] = 1.0;
    for (int r = 0; r < rank; ++r) v[pivot_col_of_row[r]] = -m[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qint
