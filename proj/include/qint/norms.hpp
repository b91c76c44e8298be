#pragma once

#include "qint/algebra.hpp"

namespace qint {

/// Per-basis-element nonnegative weights n(e_i). Defaults to 1 on every
/// basis element; all-positive values give a point-separating norm.
struct BasisNormFn {
  AlgebraPtr algebra;
  std::vector<double> values;

  static BasisNormFn ones(AlgebraPtr alg);
  void validate() const;
};

struct PNormSpec {
  double p = 1.0;
  BasisNormFn basis_norm;

  void validate() const;
};

PNormSpec default_pnorm(AlgebraPtr alg, double p = 1.0);

/// ||a||_p = (sum |f_i|^p n(e_i)^p)^(1/p).
double algebra_norm(const PNormSpec& spec, const AlgebraElement& x);

/// |a| = ||h(a)||_{B,p}; vanishes exactly on Ker(h).
double seminorm_sigma(const AlgebraHom& h, const PNormSpec& codomain_spec,
                      const AlgebraElement& a);

/// Null-space basis of the hom matrix by rank-revealing Gaussian elimination.
std::vector<std::vector<double>> kernel_basis(const AlgebraHom& h, double tol = 1e-12);

}  // namespace qint
