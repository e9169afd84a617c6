#pragma once

#include <span>
#include <vector>

#include "carleson/measure.h"
#include "carleson/spectral.h"

namespace carleson {

/// Samples of a boundary transform ĝ₀ on the symmetric grid ξ_k = -Ξ + kΔξ, k = 0..2K.
struct BandSignal {
  double xi_max = 32.0;
  double d_xi = 1.0 / 64.0;
  std::vector<cplx> values;

  BandSignal() = default;
  BandSignal(double xi_max, double d_xi, std::vector<cplx> values);

  static BandSignal zeros(double xi_max = 32.0, double d_xi = 1.0 / 64.0);
  /// Samples `fn` on the grid.
  template <class F>
  static BandSignal sampled(F fn, double xi_max = 32.0, double d_xi = 1.0 / 64.0) {
    BandSignal s = zeros(xi_max, d_xi);
    for (std::size_t k = 0; k < s.size(); ++k) s.values[k] = fn(s.xi(k));
    return s;
  }

  std::size_t size() const { return values.size(); }
  double xi(std::size_t k) const;
  bool same_grid(const BandSignal& other) const;
};

/// Uniform samples of a function on ℝ, x_k = x0 + k·dx.
struct LineSamples {
  double x0 = -64.0;
  double dx = 1.0 / 64.0;
  std::vector<cplx> values;

  /// Default window: 8192 points on [-64, 64).
  static LineSamples zeros(double half_width = 64.0, std::size_t count = 8192);
  template <class F>
  static LineSamples sampled(F fn, double half_width = 64.0, std::size_t count = 8192) {
    LineSamples s = zeros(half_width, count);
    for (std::size_t k = 0; k < s.size(); ++k) s.values[k] = fn(s.x(k));
    return s;
  }

  std::size_t size() const { return values.size(); }
  double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
  double l1_norm() const;
};

/// Riemann sum Σ h(x_k) e^{-2πi x_k ξ} dx on the grid of `like`.
BandSignal fourier_transform(const LineSamples& h, const BandSignal& like);

/// Two-sided power-law piece c|t|^p on [a, b); a may be -∞, b may be +∞.
struct LinePiece {
  double a = -kInf;
  double b = kInf;
  double c = 1.0;
  double p = 0.0;
};

/// A measure ν on ℝ made of atoms and power-law pieces.
class LineMeasure {
 public:
  LineMeasure() = default;
  LineMeasure(std::vector<Atom> atoms, std::vector<LinePiece> pieces);

  static LineMeasure lebesgue();
  static LineMeasure atom(double t, double weight = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<LinePiece>& pieces() const { return pieces_; }

  /// Whether ∫ (1 + t²)^{-1} ν(dt) is finite.
  bool poisson_integrable() const;
  /// ν([-l, l]).
  double symmetric_mass(double l) const;
  /// ∫ y/(t² + y²) ν(dt).
  double poisson(double y) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<LinePiece> pieces_;
};

/// W^Π(x) = i ∫ πx/(y² + π²x²) Π(dy).
cplx w_pi(const VerticalMeasure& pi, double x);

struct WeightSup {
  double value = 0.0;         ///< +∞ when Π is not Carleson
  bool is_carleson = true;
  double argmax = 0.0;
};

WeightSup w_pi_sup_report(const VerticalMeasure& pi);
double w_pi_sup(const VerticalMeasure& pi);

struct FourierCheckParams {
  double half_width = 64.0;  ///< spatial window [-X, X]
  double spacing = 1.0 / 64.0;
  double xi_lo = 0.5;
  double xi_hi = 4.0;
  int xi_count = 64;
};

struct FourierCheck {
  double max_error = 0.0;  ///< max relative error over the ξ test set
  std::vector<double> xi;
  std::vector<double> numeric;
  std::vector<double> exact;
};

/// Windowed transform of the real odd part of W^Π_{ε,R}, evaluated at ±ξ.
double truncated_w_transform(const VerticalMeasure& pi, double eps, double r, double xi,
                             const FourierCheckParams& params = {});

FourierCheck w_pi_truncated_fourier_report(const VerticalMeasure& pi, double eps, double r,
                                           const FourierCheckParams& params = {});
double w_pi_truncated_fourier_check(const VerticalMeasure& pi, double eps, double r,
                                    const FourierCheckParams& params = {});

/// (∫ |ĝ₀|² 𝓛_Π dξ)^{1/2} by the trapezoidal rule.
double b2h_norm(const BandSignal& g, const VerticalMeasure& pi, LaplaceConvention convention = LaplaceConvention::FourPi);

struct GarnettReport {
  double poisson_sup = 0.0;  ///< sup_y ∫ y/(t² + y²) ν(dt)
  double box_sup = 0.0;      ///< sup_L ν([-L, L])/(2L)
  double poisson_grid_max = 0.0;
  double box_grid_max = 0.0;
  bool integrable = true;
};

std::vector<double> default_garnett_grid();

GarnettReport garnett_check(const LineMeasure& nu, std::span<const double> y_grid, std::span<const double> l_grid);
GarnettReport garnett_check(const LineMeasure& nu);

/// ‖f‖_{ℬ²(μ_R)} / (‖g‖_{ℬ²(μ_R)} + ‖h‖_{L¹}) with f̂₀ = ĝ₀ + ĥ.
double stability_ratio(const BandSignal& f_hat0, const BandSignal& g_hat0, const LineSamples& h,
                       const VerticalMeasure& pi, double r);

/// 2√(2 + ‖W^{Π_R}‖_∞).
double stability_constant(const VerticalMeasure& pi, double r);

/// √(C_b + ‖W^Π‖_∞ + 1).
double const_bpi(double c_b, const VerticalMeasure& pi);

}  // namespace carleson
