#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace carleson {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Point mass `weight` at `location`.
struct Atom {
  double location = 0.0;
  double weight = 1.0;
};

/// Density c (1-r)^p r^q dr on [a, b) ⊆ [0, 1).
struct RadialPiece {
  double a = 0.0;
  double b = 1.0;
  double c = 1.0;
  double p = 0.0;
  double q = 0.0;
};

/// Radial profile σ(dr) on [0, 1) of the disk measure μ(dz) = σ(dr) dθ, as a
/// finite list of atoms plus piecewise power-law densities.
///
/// Construction validates every atom and piece; the object is immutable after.
class RadialMeasure {
 public:
  RadialMeasure() = default;
  RadialMeasure(std::vector<Atom> atoms, std::vector<RadialPiece> pieces);

  /// σ(dr) = r dr, i.e. normalized so that μ is area measure.
  static RadialMeasure lebesgue_disk();
  static RadialMeasure atom(double r, double weight = 1.0);
  /// c (1-r)^p dr on [a, b).
  static RadialMeasure power(double p, double a = 0.0, double b = 1.0, double c = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<RadialPiece>& pieces() const { return pieces_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  /// σ([lo, hi)) in closed form.
  double mass(double lo, double hi) const;
  double total_mass() const { return mass(0.0, 1.0); }
  /// σ([1-δ, 1)).
  double tail_mass(double delta) const { return mass(1.0 - delta, 1.0); }

  /// ∫ (1-r)^e g(r) σ(dr) for a smooth g. Pieces touching r = 1 fold e into
  /// their boundary exponent; returns +∞ when the combined exponent is ≤ -1.
  /// Quadrature panels are split at `breaks`, which should mark any narrow
  /// features of g.
  double integrate(const std::function<double(double)>& g, double e = 0.0,
                   std::span<const double> breaks = {}) const;

  /// Union of the two atom and piece lists.
  RadialMeasure operator+(const RadialMeasure& other) const;
  /// Restriction to [0, r_max).
  RadialMeasure restricted(double r_max) const;

  /// Sorted piece endpoints and atom locations inside (0, 1).
  std::vector<double> breakpoints() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<RadialPiece> pieces_;
};

/// Density c y^p dy on [a, b) ⊆ (0, ∞]; b may be +∞.
struct VerticalPiece {
  double a = 0.0;
  double b = kInf;
  double c = 1.0;
  double p = 0.0;
};

/// Vertical profile Π(dy) on (0, ∞) of the half-plane measure μ(dz) = dx Π(dy).
class VerticalMeasure {
 public:
  VerticalMeasure() = default;
  VerticalMeasure(std::vector<Atom> atoms, std::vector<VerticalPiece> pieces);

  /// Π(dy) = dy on (0, ∞).
  static VerticalMeasure lebesgue();
  static VerticalMeasure atom(double y, double weight = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<VerticalPiece>& pieces() const { return pieces_; }

  /// Π([lo, hi)); may be +∞ for hi = ∞.
  double mass(double lo, double hi) const;
  /// F_Π(y) = Π((0, y]).
  double cumulative(double y) const;
  /// ∫ g(y) Π(dy) for smooth g decaying fast enough at ∞ when the measure is unbounded.
  double integrate(const std::function<double(double)>& g, std::span<const double> breaks = {}) const;

  /// Π_R = 1(y < R) Π.
  VerticalMeasure truncated(double r) const;
  /// 1(lo < y < hi) Π.
  VerticalMeasure window(double lo, double hi) const;
  VerticalMeasure operator+(const VerticalMeasure& other) const;

  std::vector<double> breakpoints() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<VerticalPiece> pieces_;
};

struct CarlesonVerdict {
  double sup_ratio = 0.0;  ///< grid maximum, +∞ when the analytic verdict is negative
  bool is_carleson = false;
};

/// σ_n = ∫ r^{2|n|} σ(dr). Underflows to 0 for extreme n; use log_moment there.
double moment(const RadialMeasure& mu, long n);
/// log σ_n, finite whenever σ_n > 0 even below the double range.
double log_moment(const RadialMeasure& mu, long n);
/// σ_0, …, σ_{n_max}.
std::vector<double> moments(const RadialMeasure& mu, int n_max);

bool boundary_accessible(const RadialMeasure& mu);

/// 40 log-spaced points in [1e-6, 1 - 1e-6].
std::vector<double> default_delta_grid();
/// 40 log-spaced points in [1e-6, 1e6].
std::vector<double> default_y_grid();

/// sup_δ σ([1-δ, 1))/δ over the grid (augmented with atom and piece breakpoints),
/// with the boundary verdict decided analytically from the piece exponents.
CarlesonVerdict radial_carleson(const RadialMeasure& mu, std::span<const double> delta_grid);
CarlesonVerdict radial_carleson(const RadialMeasure& mu);

/// 2π ∫ σ(dr)/(1 - r²), +∞ when a boundary piece has exponent p ≤ 0.
double singular_integral(const RadialMeasure& mu);

/// sup_y Π((0, y])/y over the grid with analytic classification at 0 and ∞.
CarlesonVerdict vertical_carleson(const VerticalMeasure& pi, std::span<const double> y_grid);
CarlesonVerdict vertical_carleson(const VerticalMeasure& pi);

enum class LaplaceConvention { FourPi, Two };

/// ∫ e^{-κ y |ξ|} Π(dy) with κ = 4π (FourPi) or κ = 2 (Two); 0 at ξ = 0.
double laplace_transform(const VerticalMeasure& pi, double xi,
                         LaplaceConvention convention = LaplaceConvention::FourPi);

}  // namespace carleson
