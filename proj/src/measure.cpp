#include "carleson/measure.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "carleson/quadrature.h"

namespace carleson {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

/// ∫_{x0}^{x1} (1-r)^p r^m dr for 0 ≤ x0 ≤ x1 ≤ 1, via t = 1 - r.
/// ∫_{x0}^{x1} (1-r)^p r^m dr as a difference of incomplete beta integrals
/// anchored at whichever end cancels less.
double beta_segment(double x0, double x1, double p, double m) {
  const double t_hi = boost::math::beta(p + 1.0, m + 1.0, 1.0 - x0);
  const double t_lo = x1 >= 1.0 ? 0.0 : boost::math::beta(p + 1.0, m + 1.0, 1.0 - x1);
  if (t_lo == 0.0 || x0 <= 0.0) {
    if (x0 <= 0.0 && x1 < 1.0) return boost::math::beta(m + 1.0, p + 1.0, x1);
    return t_hi - t_lo;
  }
  const double r_hi = boost::math::beta(m + 1.0, p + 1.0, x1);
  const double r_lo = boost::math::beta(m + 1.0, p + 1.0, x0);
  if (r_lo * t_hi < t_lo * r_hi) return std::max(r_hi - r_lo, 0.0);
  return std::max(t_hi - t_lo, 0.0);
}

double power_beta(double x0, double x1, double p, double m) {
  if (x1 <= x0) return 0.0;
  const double peak = p > 0.0 ? m / (m + p) : x1;
  if (peak <= x0 || peak >= x1) return beta_segment(x0, x1, p, m);
  return beta_segment(x0, peak, p, m) + beta_segment(peak, x1, p, m);
}

double log_sum_exp(const std::vector<double>& terms) {
  double peak = -kInf;
  for (double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

/// log ∫_a^b c (1-r)^p r^m dr by quadrature of the integrand scaled by its peak.
double log_piece_integral(const RadialPiece& piece, double m) {
  const auto log_density = [&](double r) {
    double v = std::log(piece.c) + m * std::log(r);
    if (piece.p != 0.0) v += piece.p * std::log1p(-r);
    return v;
  };
  double peak_r = piece.b;
  if (piece.p > 0.0) peak_r = std::clamp(m / (m + piece.p), piece.a, piece.b);
  if (peak_r >= 1.0) peak_r = std::nextafter(1.0, 0.0);
  if (peak_r <= 0.0) return m == 0.0 ? std::log(piece.c * power_beta(piece.a, piece.b, piece.p, 0.0)) : -kInf;
  const double peak = log_density(peak_r);
  const double breaks[] = {peak_r};
  const double scaled = quadrature::adaptive_split(
      [&](double r) { return r <= 0.0 || r >= 1.0 ? 0.0 : std::exp(log_density(r) - peak); },
      piece.a, piece.b, breaks, {0.0, 1e-13, 60});
  return peak + std::log(scaled);
}

double vertical_power_mass(const VerticalPiece& piece, double lo, double hi) {
  const double x0 = std::max(lo, piece.a);
  const double x1 = std::min(hi, piece.b);
  if (x1 <= x0) return 0.0;
  if (piece.p == -1.0) {
    if (std::isinf(x1) || x0 == 0.0) return kInf;
    return piece.c * std::log(x1 / x0);
  }
  const double e = piece.p + 1.0;
  if (std::isinf(x1)) {
    if (e >= 0.0) return kInf;
    return -piece.c * std::pow(x0, e) / e;
  }
  return piece.c * (std::pow(x1, e) - std::pow(x0, e)) / e;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  const double l0 = std::log(lo);
  const double l1 = std::log(hi);
  for (int i = 0; i < count; ++i) grid[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  return grid;
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialMeasure

RadialMeasure::RadialMeasure(std::vector<Atom> atoms, std::vector<RadialPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string where = "atoms[" + std::to_string(i) + "]";
    require(std::isfinite(a.location) && a.location >= 0.0 && a.location < 1.0,
            where + ".r must lie in [0, 1)");
    require(std::isfinite(a.weight) && a.weight > 0.0, where + ".w must be positive");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const std::string where = "pieces[" + std::to_string(i) + "]";
    require(std::isfinite(p.a) && std::isfinite(p.b) && p.a >= 0.0 && p.a < p.b && p.b <= 1.0,
            where + " interval must satisfy 0 <= a < b <= 1");
    require(std::isfinite(p.c) && p.c > 0.0, where + ".c must be positive");
    require(std::isfinite(p.p) && p.p > -1.0, where + ".p must exceed -1");
    require(std::isfinite(p.q) && p.q >= 0.0, where + ".q must be nonnegative");
  }
}

RadialMeasure RadialMeasure::lebesgue_disk() { return RadialMeasure({}, {{0.0, 1.0, 1.0, 0.0, 1.0}}); }

RadialMeasure RadialMeasure::atom(double r, double weight) { return RadialMeasure({{r, weight}}, {}); }

RadialMeasure RadialMeasure::power(double p, double a, double b, double c) {
  return RadialMeasure({}, {{a, b, c, p, 0.0}});
}

double RadialMeasure::mass(double lo, double hi) const {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.location >= lo && a.location < hi) total += a.weight;
  }
  for (const auto& p : pieces_) {
    total += p.c * power_beta(std::max(lo, p.a), std::min(hi, p.b), p.p, p.q);
  }
  return total;
}

double RadialMeasure::integrate(const std::function<double(double)>& g, double e,
                                std::span<const double> breaks) const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight * std::pow(1.0 - a.location, e) * g(a.location);
  for (const auto& p : pieces_) {
    const double expo = p.p + e;
    const auto smooth = [&](double r) { return p.c * (p.q == 0.0 ? 1.0 : std::pow(r, p.q)) * g(r); };
    const auto full = [&](double r) { return std::pow(1.0 - r, expo) * smooth(r); };
    std::vector<double> inner;
    for (double x : breaks) {
      if (x > p.a && x < p.b) inner.push_back(x);
    }
    std::sort(inner.begin(), inner.end());
    if (p.b >= 1.0) {
      if (expo <= -1.0) return kInf;
      // The last panel carries the boundary singularity.
      const double last = inner.empty() ? p.a : inner.back();
      if (!inner.empty()) inner.pop_back();
      total += quadrature::adaptive_split(full, p.a, last, inner);
      total += quadrature::right_singular(smooth, last, 1.0, expo);
    } else {
      total += quadrature::adaptive_split(full, p.a, p.b, inner);
    }
  }
  return total;
}

RadialMeasure RadialMeasure::operator+(const RadialMeasure& other) const {
  auto atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  auto pieces = pieces_;
  pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
  return RadialMeasure(std::move(atoms), std::move(pieces));
}

RadialMeasure RadialMeasure::restricted(double r_max) const {
  std::vector<Atom> atoms;
  for (const auto& a : atoms_) {
    if (a.location < r_max) atoms.push_back(a);
  }
  std::vector<RadialPiece> pieces;
  for (auto p : pieces_) {
    if (p.a >= r_max) continue;
    p.b = std::min(p.b, r_max);
    pieces.push_back(p);
  }
  return RadialMeasure(std::move(atoms), std::move(pieces));
}

std::vector<double> RadialMeasure::breakpoints() const {
  std::vector<double> points;
  for (const auto& a : atoms_) points.push_back(a.location);
  for (const auto& p : pieces_) {
    points.push_back(p.a);
    points.push_back(p.b);
  }
  std::erase_if(points, [](double x) { return x <= 0.0 || x >= 1.0; });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

// ---------------------------------------------------------------------------
// VerticalMeasure

VerticalMeasure::VerticalMeasure(std::vector<Atom> atoms, std::vector<VerticalPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string where = "atoms[" + std::to_string(i) + "]";
    require(std::isfinite(a.location) && a.location > 0.0, where + ".y must be positive");
    require(std::isfinite(a.weight) && a.weight > 0.0, where + ".w must be positive");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const std::string where = "pieces[" + std::to_string(i) + "]";
    require(std::isfinite(p.a) && p.a >= 0.0 && p.a < p.b, where + " interval must satisfy 0 <= a < b");
    require(std::isfinite(p.c) && p.c > 0.0, where + ".c must be positive");
    require(std::isfinite(p.p), where + ".p must be finite");
    require(p.a > 0.0 || p.p > -1.0, where + ".p must exceed -1 on a piece touching 0");
  }
}

VerticalMeasure VerticalMeasure::lebesgue() { return VerticalMeasure({}, {{0.0, kInf, 1.0, 0.0}}); }

VerticalMeasure VerticalMeasure::atom(double y, double weight) { return VerticalMeasure({{y, weight}}, {}); }

double VerticalMeasure::mass(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.location >= lo && a.location < hi) total += a.weight;
  }
  for (const auto& p : pieces_) total += vertical_power_mass(p, lo, hi);
  return total;
}

double VerticalMeasure::cumulative(double y) const {
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.location <= y) total += a.weight;
  }
  for (const auto& p : pieces_) total += vertical_power_mass(p, 0.0, y);
  return total;
}

double VerticalMeasure::integrate(const std::function<double(double)>& g, std::span<const double> breaks) const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight * g(a.location);
  for (const auto& p : pieces_) {
    const auto density = [&](double y) { return p.c * (p.p == 0.0 ? 1.0 : std::pow(y, p.p)) * g(y); };
    std::vector<double> points{p.a};
    for (double x : breaks) {
      if (x > p.a && x < p.b) points.push_back(x);
    }
    std::sort(points.begin() + 1, points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (std::isfinite(p.b)) {
      points.push_back(p.b);
    } else if (p.a == 0.0 && points.size() == 1) {
      points.push_back(1.0);
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      if (i == 0 && p.a == 0.0 && p.p < 0.0) {
        const auto smooth = [&](double y) { return p.c * g(y); };
        total += quadrature::left_singular(smooth, 0.0, points[1], p.p);
      } else {
        total += quadrature::adaptive(density, points[i], points[i + 1]);
      }
    }
    if (std::isinf(p.b)) {
      const double t = points.back();
      if (p.p == 0.0 || t <= 0.0) {
        total += quadrature::semi_infinite(density, t);
      } else {
        // y = t/u turns the algebraic tail into ∫_0^1 u^{-p} (smooth) du
        const double front = p.c * std::pow(t, p.p + 1.0);
        const auto smooth = [&](double u) { return u <= 0.0 ? 0.0 : front * g(t / u) / (u * u); };
        total += quadrature::left_singular(smooth, 0.0, 1.0, -p.p);
      }
    }
  }
  return total;
}

VerticalMeasure VerticalMeasure::window(double lo, double hi) const {
  std::vector<Atom> atoms;
  for (const auto& a : atoms_) {
    if (a.location > lo && a.location < hi) atoms.push_back(a);
  }
  std::vector<VerticalPiece> pieces;
  for (auto p : pieces_) {
    p.a = std::max(p.a, lo);
    p.b = std::min(p.b, hi);
    if (p.a < p.b) pieces.push_back(p);
  }
  return VerticalMeasure(std::move(atoms), std::move(pieces));
}

VerticalMeasure VerticalMeasure::truncated(double r) const { return window(0.0, r); }

VerticalMeasure VerticalMeasure::operator+(const VerticalMeasure& other) const {
  auto atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  auto pieces = pieces_;
  pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
  return VerticalMeasure(std::move(atoms), std::move(pieces));
}

std::vector<double> VerticalMeasure::breakpoints() const {
  std::vector<double> points;
  for (const auto& a : atoms_) points.push_back(a.location);
  for (const auto& p : pieces_) {
    points.push_back(p.a);
    points.push_back(p.b);
  }
  std::erase_if(points, [](double x) { return !(x > 0.0) || std::isinf(x); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

// ---------------------------------------------------------------------------
// Operations

double log_moment(const RadialMeasure& mu, long n) {
  const double m = 2.0 * static_cast<double>(std::labs(n));
  std::vector<double> terms;
  for (const auto& a : mu.atoms()) {
    if (a.location == 0.0) {
      terms.push_back(m == 0.0 ? std::log(a.weight) : -kInf);
    } else {
      terms.push_back(std::log(a.weight) + m * std::log(a.location));
    }
  }
  for (const auto& p : mu.pieces()) {
    const double closed = p.c * power_beta(p.a, p.b, p.p, p.q + m);
    if (std::isfinite(closed) && closed > 1e-290) {
      terms.push_back(std::log(closed));
    } else {
      terms.push_back(log_piece_integral(p, p.q + m));
    }
  }
  return log_sum_exp(terms);
}

double moment(const RadialMeasure& mu, long n) {
  const double m = 2.0 * static_cast<double>(std::labs(n));
  double total = 0.0;
  bool underflow = false;
  for (const auto& a : mu.atoms()) total += a.weight * std::pow(a.location, m);
  for (const auto& p : mu.pieces()) {
    const double closed = p.c * power_beta(p.a, p.b, p.p, p.q + m);
    if (!(closed > 1e-290)) underflow = true;
    total += closed;
  }
  if (underflow || !(total > 1e-290)) return std::exp(log_moment(mu, n));
  return total;
}

std::vector<double> moments(const RadialMeasure& mu, int n_max) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out[n] = moment(mu, n);
  return out;
}

bool boundary_accessible(const RadialMeasure& mu) {
  return std::any_of(mu.pieces().begin(), mu.pieces().end(), [](const RadialPiece& p) { return p.b >= 1.0; });
}

std::vector<double> default_delta_grid() { return log_grid(1e-6, 1.0 - 1e-6, 40); }

std::vector<double> default_y_grid() { return log_grid(1e-6, 1e6, 40); }

CarlesonVerdict radial_carleson(const RadialMeasure& mu, std::span<const double> delta_grid) {
  if (delta_grid.empty()) throw std::invalid_argument("radial_carleson: empty delta grid");
  CarlesonVerdict verdict;
  verdict.is_carleson = std::none_of(mu.pieces().begin(), mu.pieces().end(),
                                     [](const RadialPiece& p) { return p.b >= 1.0 && p.p < 0.0; });
  if (!verdict.is_carleson) {
    verdict.sup_ratio = kInf;
    return verdict;
  }
  // Ratio with the lower endpoint given directly, so atoms sitting exactly on
  // 1 - δ are counted without rounding through δ.
  const auto ratio_at = [&](double lower) { return mu.mass(lower, 1.0) / (1.0 - lower); };
  double sup = 0.0;
  for (double delta : delta_grid) {
    if (delta > 0.0 && delta < 1.0) sup = std::max(sup, ratio_at(1.0 - delta));
  }
  for (double r : mu.breakpoints()) sup = std::max(sup, ratio_at(r));
  verdict.sup_ratio = sup;
  return verdict;
}

CarlesonVerdict radial_carleson(const RadialMeasure& mu) { return radial_carleson(mu, default_delta_grid()); }

double singular_integral(const RadialMeasure& mu) {
  const double value = mu.integrate([](double r) { return 1.0 / (1.0 + r); }, -1.0);
  return 2.0 * std::numbers::pi * value;
}

CarlesonVerdict vertical_carleson(const VerticalMeasure& pi, std::span<const double> y_grid) {
  if (y_grid.empty()) throw std::invalid_argument("vertical_carleson: empty y grid");
  CarlesonVerdict verdict;
  verdict.is_carleson = std::none_of(pi.pieces().begin(), pi.pieces().end(), [](const VerticalPiece& p) {
    return (p.a == 0.0 && p.p < 0.0) || (std::isinf(p.b) && p.p > 0.0);
  });
  if (!verdict.is_carleson) {
    verdict.sup_ratio = kInf;
    return verdict;
  }
  double sup = 0.0;
  const auto visit = [&](double y) {
    if (y > 0.0 && std::isfinite(y)) sup = std::max(sup, pi.cumulative(y) / y);
  };
  for (double y : y_grid) visit(y);
  for (double y : pi.breakpoints()) visit(y);
  verdict.sup_ratio = sup;
  return verdict;
}

CarlesonVerdict vertical_carleson(const VerticalMeasure& pi) { return vertical_carleson(pi, default_y_grid()); }

double laplace_transform(const VerticalMeasure& pi, double xi, LaplaceConvention convention) {
  if (xi == 0.0) return 0.0;
  const double kappa = convention == LaplaceConvention::FourPi ? 4.0 * std::numbers::pi : 2.0;
  const double k = kappa * std::abs(xi);
  double total = 0.0;
  for (const auto& a : pi.atoms()) total += a.weight * std::exp(-k * a.location);
  for (const auto& p : pi.pieces()) {
    if (p.p > -1.0) {
      // c ∫_a^b y^p e^{-ky} dy = c k^{-(p+1)} [Γ(p+1, ka) - Γ(p+1, kb)]
      const double s = p.p + 1.0;
      const double ka = k * p.a;
      const double kb = k * p.b;
      double diff = 0.0;
      if (ka < s) {
        const double upper = std::isinf(kb) ? boost::math::tgamma(s) : boost::math::tgamma_lower(s, kb);
        diff = upper - (ka > 0.0 ? boost::math::tgamma_lower(s, ka) : 0.0);
      } else {
        diff = boost::math::tgamma(s, ka) - (std::isinf(kb) ? 0.0 : boost::math::tgamma(s, kb));
      }
      total += p.c * std::pow(k, -s) * diff;
    } else {
      const VerticalMeasure single({}, {p});
      total += single.integrate([k](double y) { return std::exp(-k * y); });
    }
  }
  return total;
}

}  // namespace carleson
