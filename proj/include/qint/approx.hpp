#pragma once

#include "qint/integrate.hpp"

namespace qint {

/// 1-D scalar handle over the canonical dim-1 real algebra.
FunctionHandle scalar_handle(std::function<double(double)> f);

/// Polynomial c0 + c1 x + ... + cN x^N evaluated on [0,1].
FunctionHandle taylor_truncate(const std::vector<double>& coeffs);
double polynomial_value(const std::vector<double>& coeffs, double x);

/// Realified trigonometric coefficients on [0,1]:
///   a[0] = integral of h, a[n] = 2 integral of h(x) cos(2 pi n x),
///   b[n] = 2 integral of h(x) sin(2 pi n x)  (b[0] = 0),
/// computed with the engine's own level-u integration.
struct FourierCoeffs {
  std::vector<double> a;
  std::vector<double> b;
};

FourierCoeffs fourier_coeffs(const std::function<double(double)>& h, int order, int u,
                             std::uint64_t cell_budget = kDefaultCellBudget);

/// Partial sum up to n = order using the leading coefficients.
FunctionHandle fourier_partial_sum(const FourierCoeffs& coeffs, int order);
double fourier_value(const FourierCoeffs& coeffs, int order, double x);

/// Level-u integral of |h - g| over [0,1].
double l1_distance(const std::function<double(double)>& h, const std::function<double(double)>& g,
                   int u, std::uint64_t cell_budget = kDefaultCellBudget);

enum class SeriesKind { taylor, fourier };

struct ConvergenceRow {
  int order;
  double l1_error;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool weakly_decreasing = true;
};

/// Errors of truncations of h at the given strictly increasing orders. For
/// Taylor series the full coefficient list supplies every truncation; for
/// Fourier series coefficients are computed once at the maximal order.
ConvergenceReport convergence_report(const std::function<double(double)>& h, SeriesKind kind,
                                     const std::vector<double>& taylor_coeffs,
                                     const std::vector<int>& orders, int u);

}  // namespace qint
