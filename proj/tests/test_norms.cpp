#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qint/errors.hpp"
#include "qint/fixtures.hpp"
#include "qint/rng.hpp"

using namespace qint;

TEST_SUITE("norms") {

TEST_CASE("algebra_norm direct formula values") {
  const AlgebraPtr b = example7_B();
  const PNormSpec p2 = default_pnorm(b, 2.0);
  AlgebraElement x = zero_element(b);
  x.coeffs[b->index_of("e1")] = 1.0;
  x.coeffs[b->index_of("a")] = 1.0;
  CHECK(algebra_norm(p2, x) == doctest::Approx(std::sqrt(2.0)));

  for (double p : {1.0, 2.0, 3.0}) CHECK(algebra_norm(default_pnorm(b, p), zero_element(b)) == 0.0);

  PNormSpec weighted = default_pnorm(b, 1.0);
  weighted.basis_norm.values[0] = 2.0;
  weighted.basis_norm.values[1] = 3.0;
  AlgebraElement y = zero_element(b);
  y.coeffs[0] = 1.0;
  y.coeffs[1] = -1.0;
  CHECK(algebra_norm(weighted, y) == doctest::Approx(5.0));
}

TEST_CASE("seminorm vanishes on the kernel and matches the composite route") {
  const AlgebraHom sigma = example7_sigma();
  const AlgebraPtr a = example7_A();
  const PNormSpec bspec = default_pnorm(example7_B(), 1.0);

  CHECK(seminorm_sigma(sigma, bspec, basis_element(a, a->index_of("x1"))) == 0.0);
  CHECK(seminorm_sigma(sigma, bspec, unit_element(a)) ==
        doctest::Approx(algebra_norm(bspec, unit_element(example7_B()))));

  SplitRng rng(23, 0);
  for (int t = 0; t < 200; ++t) {
    const AlgebraElement x = random_element(a, rng, 3.0);
    const double direct = seminorm_sigma(sigma, bspec, x);
    const double composed = algebra_norm(bspec, apply_hom(sigma, x));
    CHECK(std::abs(direct - composed) < 1e-12);
  }
}

TEST_CASE("triangle inequality and homogeneity over 1000 random pairs per p") {
  const AlgebraPtr b = example7_B();
  SplitRng rng(101, 0);
  for (double p : {1.0, 2.0, 3.0}) {
    const PNormSpec spec = default_pnorm(b, p);
    for (int t = 0; t < 1000; ++t) {
      SplitRng trial = rng.split(static_cast<std::uint64_t>(p * 4096) + t);
      const AlgebraElement x = random_element(b, trial, 2.0);
      const AlgebraElement y = random_element(b, trial, 2.0);
      CHECK(algebra_norm(spec, add(x, y)) <=
            algebra_norm(spec, x) + algebra_norm(spec, y) + 1e-12);
      const double lambda = trial.uniform(-10.0, 10.0);
      CHECK(std::abs(algebra_norm(spec, scale(lambda, x)) -
                     std::abs(lambda) * algebra_norm(spec, x)) <= 1e-12);
    }
  }
}

TEST_CASE("point separation for strictly positive basis norms") {
  const AlgebraPtr b = example7_B();
  const PNormSpec spec = default_pnorm(b, 2.0);
  SplitRng rng(31, 0);
  for (int t = 0; t < 1000; ++t) {
    const AlgebraElement x = random_element(b, rng);
    if (algebra_norm(spec, x) == 0.0) CHECK(max_abs(x) <= 1e-12);
    if (max_abs(x) > 1e-6) CHECK(algebra_norm(spec, x) > 0.0);
  }
}

TEST_CASE("seminorm is at most 10 tol on a computed kernel basis") {
  const AlgebraHom sigma = example7_sigma();
  const PNormSpec bspec = default_pnorm(example7_B(), 1.0);
  for (const auto& v : kernel_basis(sigma))
    CHECK(seminorm_sigma(sigma, bspec, AlgebraElement{example7_A(), v}) <= 10 * kTolAlg);
}

TEST_CASE("kernel_basis returns an actual null-space basis on random matrices") {
  SplitRng rng(77, 0);
  for (int t = 0; t < 25; ++t) {
    const AlgebraPtr dom = coordinate_algebra(6);
    const AlgebraPtr cod = coordinate_algebra(3);
    AlgebraHom h = zero_hom(dom, cod);
    // Rank <= 3 by construction; expect at least 3 kernel vectors.
    for (auto& row : h.matrix)
      for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    const auto basis = kernel_basis(h);
    CHECK(basis.size() >= 3);
    for (const auto& v : basis) {
      CHECK(max_abs(apply_hom(h, AlgebraElement{dom, v})) < 1e-10);
      CHECK(*std::max_element(v.begin(), v.end()) > 0.0);  // nonzero vector
    }
  }
}

TEST_CASE("invalid norm specs are rejected") {
  const AlgebraPtr b = example7_B();
  PNormSpec bad = default_pnorm(b, 0.5);
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("p must be >= 1"), Error);
  PNormSpec negative = default_pnorm(b, 1.0);
  negative.basis_norm.values[2] = -1.0;
  CHECK_THROWS_WITH_AS(negative.validate(), doctest::Contains(">= 0"), Error);
  CHECK_THROWS_WITH_AS(algebra_norm(default_pnorm(example7_A(), 1.0), zero_element(b)),
                       doctest::Contains("AlgebraMismatch"), Error);
}

}  // TEST_SUITE
