#include "qint/approx.hpp"

#include <cmath>

#include "qint/errors.hpp"

namespace qint {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SigmaContext scalar_context() {
  const AlgebraPtr R = scalar_real_algebra();
  return make_context(R, R, identity_hom(R), make_domain(1), 1.0);
}

double integrate_scalar_at_level(const std::function<double(double)>& f, int u,
                                 std::uint64_t cell_budget) {
  static const SigmaContext ctx = scalar_context();
  const AlgebraElement v = integrate_at_level(
      scalar_handle([&](double x) { return f(x); }), ctx, u, SampleRule::midpoint, cell_budget);
  return v.coeffs[0];
}

}  // namespace

FunctionHandle scalar_handle(std::function<double(double)> f) {
  return FunctionHandle{scalar_real_algebra(),
                        [f = std::move(f)](const std::vector<double>& x) {
                          return std::vector<double>{f(x[0])};
                        }};
}

double polynomial_value(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FunctionHandle taylor_truncate(const std::vector<double>& coeffs) {
  return scalar_handle([coeffs](double x) { return polynomial_value(coeffs, x); });
}

FourierCoeffs fourier_coeffs(const std::function<double(double)>& h, int order, int u,
                             std::uint64_t cell_budget) {
  if (order < 0) fail("InvalidInput", "order must be >= 0");
  FourierCoeffs out;
  out.a.resize(order + 1);
  out.b.assign(order + 1, 0.0);
  out.a[0] = integrate_scalar_at_level(h, u, cell_budget);
  for (int n = 1; n <= order; ++n) {
    out.a[n] = 2.0 * integrate_scalar_at_level(
                         [&](double x) { return h(x) * std::cos(kTwoPi * n * x); }, u,
                         cell_budget);
    out.b[n] = 2.0 * integrate_scalar_at_level(
                         [&](double x) { return h(x) * std::sin(kTwoPi * n * x); }, u,
                         cell_budget);
  }
  return out;
}

double fourier_value(const FourierCoeffs& coeffs, int order, double x) {
  if (order >= static_cast<int>(coeffs.a.size()))
    fail("InvalidInput", "partial sum order exceeds computed coefficients");
  double acc = coeffs.a[0];
  for (int n = 1; n <= order; ++n)
    acc += coeffs.a[n] * std::cos(kTwoPi * n * x) + coeffs.b[n] * std::sin(kTwoPi * n * x);
  return acc;
}

FunctionHandle fourier_partial_sum(const FourierCoeffs& coeffs, int order) {
  return scalar_handle([coeffs, order](double x) { return fourier_value(coeffs, order, x); });
}

double l1_distance(const std::function<double(double)>& h, const std::function<double(double)>& g,
                   int u, std::uint64_t cell_budget) {
  return integrate_scalar_at_level([&](double x) { return std::abs(h(x) - g(x)); }, u,
                                   cell_budget);
}

ConvergenceReport convergence_report(const std::function<double(double)>& h, SeriesKind kind,
                                     const std::vector<double>& taylor_coeffs,
                                     const std::vector<int>& orders, int u) {
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (orders[i] <= orders[i - 1]) fail("InvalidInput", "orders must be strictly increasing");
  ConvergenceReport report;
  FourierCoeffs fc;
  if (kind == SeriesKind::fourier && !orders.empty())
    fc = fourier_coeffs(h, orders.back(), u);
  for (int order : orders) {
    std::function<double(double)> approx;
    if (kind == SeriesKind::taylor) {
      std::vector<double> head(taylor_coeffs.begin(),
                               taylor_coeffs.begin() +
                                   std::min<std::size_t>(order + 1, taylor_coeffs.size()));
      approx = [head](double x) { return polynomial_value(head, x); };
    } else {
      approx = [fc, order](double x) { return fourier_value(fc, order, x); };
    }
    report.rows.push_back(ConvergenceRow{order, l1_distance(h, approx, u)});
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].l1_error > report.rows[i - 1].l1_error + 1e-12)
      report.weakly_decreasing = false;
  return report;
}

}  // namespace qint
