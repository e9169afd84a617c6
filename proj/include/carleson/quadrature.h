#pragma once

#include <functional>
#include <span>
#include <vector>

namespace carleson::quadrature {

using Integrand = std::function<double(double)>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule, computed by Newton
/// iteration on the Legendre recurrence. Cached per n; safe to call from any thread.
const GaussRule& gauss_legendre(int n);

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-13;
  int max_depth = 60;
};

/// Globally adaptive Gauss-Legendre on the finite interval [a, b]. The error of a
/// panel is the gap between its 20-point value and the sum over its two halves;
/// the panel with the largest error is bisected until the total meets the tolerance.
double adaptive(const Integrand& f, double a, double b, const Tolerance& tol = {});

/// Same as adaptive() but first splits [a, b] at the given interior breakpoints.
double adaptive_split(const Integrand& f, double a, double b, std::span<const double> breaks,
                      const Tolerance& tol = {});

/// ∫_a^b (b - x)^e f(x) dx for e > -1 and smooth f; the endpoint singularity is
/// removed by the substitution b - x = t^{1/(e+1)}.
double right_singular(const Integrand& f, double a, double b, double e, const Tolerance& tol = {});

/// ∫_a^b (x - a)^e f(x) dx for e > -1 and smooth f.
double left_singular(const Integrand& f, double a, double b, double e, const Tolerance& tol = {});

/// ∫_a^∞ f(x) dx via x = a + Lt/(1-t), L = max(1, |a|); f must decay at least like x^{-1-δ}.
double semi_infinite(const Integrand& f, double a, const Tolerance& tol = {});

}  // namespace carleson::quadrature
