#include "carleson/quadrature.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace carleson::quadrature {

namespace {

constexpr int kPanelOrder = 20;
constexpr int kMaxPanels = 20000;

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double panel(const Integrand& f, double a, double b) {
  const GaussRule& rule = gauss_legendre(kPanelOrder);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Panel {
  double a;
  double b;
  double value;
  double err;
  int depth;
  bool operator<(const Panel& other) const { return err < other.err; }
};

Panel split(const Integrand& f, double a, double b, int depth) {
  const double mid = 0.5 * (a + b);
  const double whole = panel(f, a, b);
  const double both = panel(f, a, mid) + panel(f, mid, b);
  return {a, b, both, std::abs(both - whole), depth};
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

double adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive(f, b, a, tol);
  std::priority_queue<Panel> queue;
  queue.push(split(f, a, b, 0));
  double value = queue.top().value;
  double err = queue.top().err;
  int panels = 1;
  while (err > std::max(tol.abs, tol.rel * std::abs(value)) && panels < kMaxPanels) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.depth >= tol.max_depth || mid <= worst.a || mid >= worst.b) break;
    queue.pop();
    const Panel left = split(f, worst.a, mid, worst.depth + 1);
    const Panel right = split(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  value = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    queue.pop();
  }
  return value;
}

double adaptive_split(const Integrand& f, double a, double b, std::span<const double> breaks,
                      const Tolerance& tol) {
  double sum = 0.0;
  double lo = a;
  for (double x : breaks) {
    if (x <= lo || x >= b) continue;
    sum += adaptive(f, lo, x, tol);
    lo = x;
  }
  return sum + adaptive(f, lo, b, tol);
}

double right_singular(const Integrand& f, double a, double b, double e, const Tolerance& tol) {
  if (e <= -1.0) throw std::invalid_argument("right_singular: exponent must exceed -1");
  if (e >= 0.0) {
    return adaptive([&](double x) { return std::pow(b - x, e) * f(x); }, a, b, tol);
  }
  // (b - x)^e dx = dt / (e + 1) with t = (b - x)^{e+1}.
  const double k = 1.0 / (e + 1.0);
  const double t_max = std::pow(b - a, e + 1.0);
  return k * adaptive([&](double t) { return f(b - std::pow(t, k)); }, 0.0, t_max, tol);
}

double left_singular(const Integrand& f, double a, double b, double e, const Tolerance& tol) {
  if (e <= -1.0) throw std::invalid_argument("left_singular: exponent must exceed -1");
  if (e >= 0.0) {
    return adaptive([&](double x) { return std::pow(x - a, e) * f(x); }, a, b, tol);
  }
  const double k = 1.0 / (e + 1.0);
  const double t_max = std::pow(b - a, e + 1.0);
  return k * adaptive([&](double t) { return f(a + std::pow(t, k)); }, 0.0, t_max, tol);
}

double semi_infinite(const Integrand& f, double a, const Tolerance& tol) {
  const double scale = std::max(1.0, std::abs(a));
  return scale * adaptive(
      [&](double t) {
        if (t >= 1.0) return 0.0;
        const double s = 1.0 - t;
        return f(a + scale * t / s) / (s * s);
      },
      0.0, 1.0, tol);
}

}  // namespace carleson::quadrature
