#include "carleson/spaces.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace carleson {

namespace {

constexpr double kPi = std::numbers::pi;

/// Breakpoints in r around the peak of a kernel of the form
/// 1 / ((x - c)² + s²) where x = r^power.
std::vector<double> peak_breaks(double center, double width, int power) {
  std::vector<double> out;
  for (double k : {-8.0, -1.0, 0.0, 1.0, 8.0}) {
    const double x = center + k * width;
    if (x <= 0.0 || x >= 1.0) continue;
    out.push_back(power == 2 ? std::sqrt(x) : x);
  }
  return out;
}

bool has_singular_boundary(const RadialMeasure& mu) {
  return std::any_of(mu.pieces().begin(), mu.pieces().end(),
                     [](const RadialPiece& p) { return p.b >= 1.0 && p.p < 0.0; });
}

}  // namespace

std::string to_string(NormMethod method) {
  switch (method) {
    case NormMethod::ClosedForm: return "closed_form";
    case NormMethod::Quadrature: return "quadrature";
    case NormMethod::GridSup: return "grid_sup";
  }
  return "unknown";
}

double l2_norm(const CoeffVector& u) {
  double sum = 0.0;
  for (cplx c : u.data()) sum += std::norm(c);
  return std::sqrt(sum);
}

double l1_norm(const GridFunction& g) {
  if (g.samples.empty()) return 0.0;
  double sum = 0.0;
  for (cplx s : g.samples) sum += std::abs(s);
  return sum / static_cast<double>(g.m());
}

double hmu_norm(const CoeffVector& u, std::span<const double> sigma) {
  if (sigma.size() < static_cast<std::size_t>(u.n_max()) + 1) {
    throw std::invalid_argument("hmu_norm: not enough moments");
  }
  double sum = 0.0;
  for (int n = -u.n_max(); n <= u.n_max(); ++n) sum += std::norm(u[n]) * sigma[static_cast<std::size_t>(std::abs(n))];
  return std::sqrt(2.0 * kPi * sum);
}

double hmu_norm(const CoeffVector& u, const RadialMeasure& mu) { return hmu_norm(u, moments(mu, u.n_max())); }

double a2_norm(const CoeffVector& u, const RadialMeasure& mu) {
  if (!u.is_analytic()) throw std::invalid_argument("a2_norm: input has negative-frequency coefficients");
  return hmu_norm(u, mu);
}

cplx w_sigma_at(const RadialMeasure& mu, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (s == 0.0) return {};
  // |r² - e^{-iθ}|² = (r² - cos θ)² + sin² θ, peaked at r² = cos θ.
  const auto kernel = [s, c](double r) {
    const double x = r * r;
    return x * s / ((x - c) * (x - c) + s * s);
  };
  const auto breaks = peak_breaks(c, std::abs(s), 2);
  return {0.0, 2.0 * mu.integrate(kernel, 0.0, breaks)};
}

GridFunction w_sigma(const RadialMeasure& mu, std::size_t m) {
  if (m == 0) throw std::invalid_argument("w_sigma: empty grid");
  if (!radial_carleson(mu).is_carleson) {
    std::clog << "warning: w_sigma requested for a non-Carleson measure; samples are unbounded\n";
  }
  GridFunction g{std::vector<cplx>(m)};
  // w_σ(e^{-iθ}) = -w_σ(e^{iθ}), so only the upper half is integrated.
  for (std::size_t k = 1; 2 * k <= m; ++k) {
    const cplx v = w_sigma_at(mu, GridFunction::node(k, m));
    g.samples[k] = v;
    if (2 * k != m) g.samples[m - k] = -v;
  }
  if (m % 2 == 0) g.samples[m / 2] = 0.0;
  return g;
}

double cauchy_kernel_bound(const RadialMeasure& mu) { return std::sqrt(singular_integral(mu)); }

std::vector<double> default_theta_grid() {
  constexpr int kCount = 2048;
  std::vector<double> grid(kCount);
  for (int j = 1; j <= kCount; ++j) grid[j - 1] = kPi * (1.0 - std::cos(0.5 * kPi * j / kCount));
  return grid;
}

double poisson_integral(const RadialMeasure& alpha, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const auto kernel = [s, c](double r) { return s / ((r - c) * (r - c) + s * s); };
  const auto breaks = peak_breaks(c, std::abs(s), 1);
  return alpha.integrate(kernel, 0.0, breaks);
}

double poisson_sup(const RadialMeasure& alpha, std::span<const double> theta_grid) {
  if (has_singular_boundary(alpha)) return kInf;
  std::vector<double> grid;
  for (double t : theta_grid) {
    if (t > 0.0 && t < kPi) grid.push_back(t);
  }
  if (grid.empty()) throw std::invalid_argument("poisson_sup: theta grid has no point in (0, pi)");
  std::sort(grid.begin(), grid.end());
  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double v = poisson_integral(alpha, grid[j]);
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  const double lo = best == 0 ? 0.5 * grid[0] : grid[best - 1];
  const double hi = best + 1 == grid.size() ? 0.5 * (grid[best] + kPi) : grid[best + 1];
  const auto [arg, neg] = boost::math::tools::brent_find_minima(
      [&](double t) { return -poisson_integral(alpha, t); }, lo, hi, 40);
  (void)arg;
  return std::max(best_value, -neg);
}

double poisson_sup(const RadialMeasure& alpha) { return poisson_sup(alpha, default_theta_grid()); }

}  // namespace carleson
