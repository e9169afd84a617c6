#include "carleson/halfplane.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/minima.hpp>

#include "carleson/quadrature.h"

namespace carleson {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  return g;
}

/// Maximizes f over log-spaced candidates, then polishes with Brent between the neighbours of the best point.
template <class F>
std::pair<double, double> log_sup(F f, std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = f(points[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (points.size() >= 3) {
    const double lo = std::log(points[best == 0 ? 0 : best - 1]);
    const double hi = std::log(points[std::min(best + 1, points.size() - 1)]);
    if (hi > lo) {
      const auto r = boost::math::tools::brent_find_minima([&](double t) { return -f(std::exp(t)); }, lo, hi, 50);
      if (-r.second > best_value) return {-r.second, std::exp(r.first)};
    }
  }
  return {best_value, points[best]};
}

/// ∫_u^v |t|^p dt for u < v; any interval containing 0 needs p > -1.
double power_mass(double p, double u, double v) {
  if (u >= v) return 0.0;
  if (v <= 0.0) return power_mass(p, -v, -u);
  if (u < 0.0) return power_mass(p, 0.0, -u) + power_mass(p, 0.0, v);
  if (std::isinf(v)) return p < -1.0 ? std::pow(u, p + 1.0) / -(p + 1.0) : kInf;
  if (p == -1.0) return std::log(v / u);
  return (std::pow(v, p + 1.0) - std::pow(u, p + 1.0)) / (p + 1.0);
}

/// ∫_u^v t^p s/(t² + s²) dt with 0 ≤ u < v ≤ ∞. For |p| < 1 the substitution
/// w = t²/(t² + s²) gives (s^p/2) times an incomplete beta integral.
double poisson_power(double p, double u, double v, double s) {
  if (u >= v) return 0.0;
  if (p > -1.0 && p < 1.0) {
    const double a = 0.5 * (p + 1.0);
    const double b = 0.5 * (1.0 - p);
    const auto lower = [&](double t) { return t == 0.0 ? 0.0 : boost::math::beta(a, b, t * t / (t * t + s * s)); };
    const auto upper = [&](double t) { return std::isinf(t) ? 0.0 : boost::math::beta(b, a, s * s / (t * t + s * s)); };
    const double value = v <= s ? lower(v) - lower(u) : upper(u) - upper(v);
    return 0.5 * std::pow(s, p) * std::max(value, 0.0);
  }
  const VerticalMeasure piece({}, {{u, v, 1.0, p}});
  const double breaks[] = {0.25 * s, s, 4.0 * s};
  return piece.integrate([s](double t) { return s / (t * t + s * s); }, breaks);
}

}  // namespace

BandSignal::BandSignal(double xi_max_, double d_xi_, std::vector<cplx> values_)
    : xi_max(xi_max_), d_xi(d_xi_), values(std::move(values_)) {
  require(std::isfinite(xi_max) && xi_max > 0.0, "BandSignal: xi_max must be positive");
  require(std::isfinite(d_xi) && d_xi > 0.0, "BandSignal: d_xi must be positive");
  const double k = xi_max / d_xi;
  require(std::abs(k - std::round(k)) < 1e-9 * k, "BandSignal: xi_max must be a multiple of d_xi");
  require(values.size() == 2 * static_cast<std::size_t>(std::llround(k)) + 1,
          "BandSignal: expected " + std::to_string(2 * std::llround(k) + 1) + " samples");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i].real()) && std::isfinite(values[i].imag()),
            "BandSignal: values[" + std::to_string(i) + "] is not finite");
  }
}

BandSignal BandSignal::zeros(double xi_max, double d_xi) {
  const auto k = static_cast<std::size_t>(std::llround(xi_max / d_xi));
  return BandSignal(xi_max, d_xi, std::vector<cplx>(2 * k + 1));
}

double BandSignal::xi(std::size_t k) const {
  const auto half = static_cast<long long>(values.size() / 2);
  return static_cast<double>(static_cast<long long>(k) - half) * d_xi;
}

bool BandSignal::same_grid(const BandSignal& other) const {
  return values.size() == other.values.size() && d_xi == other.d_xi;
}

LineSamples LineSamples::zeros(double half_width, std::size_t count) {
  require(half_width > 0.0 && count >= 2, "LineSamples: need a positive width and at least two points");
  LineSamples s;
  s.x0 = -half_width;
  s.dx = 2.0 * half_width / static_cast<double>(count);
  s.values.assign(count, cplx{});
  return s;
}

double LineSamples::l1_norm() const {
  double total = 0.0;
  for (cplx v : values) total += std::abs(v);
  return total * dx;
}

BandSignal fourier_transform(const LineSamples& h, const BandSignal& like) {
  BandSignal out = like;
  constexpr std::size_t kResync = 256;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double xi = out.xi(j);
    const cplx step = std::polar(1.0, -2.0 * kPi * h.dx * xi);
    cplx sum{};
    cplx phase{};
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (k % kResync == 0) {
        phase = std::polar(1.0, -2.0 * kPi * std::fmod(h.x(k) * xi, 1.0));
      } else {
        phase *= step;
      }
      sum += h.values[k] * phase;
    }
    out.values[j] = sum * h.dx;
  }
  return out;
}

LineMeasure::LineMeasure(std::vector<Atom> atoms, std::vector<LinePiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string where = "atoms[" + std::to_string(i) + "]";
    require(std::isfinite(a.location), where + ".t must be finite");
    require(std::isfinite(a.weight) && a.weight > 0.0, where + ".w must be positive");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const std::string where = "pieces[" + std::to_string(i) + "]";
    require(!std::isnan(p.a) && !std::isnan(p.b) && p.a < p.b && p.a < kInf && p.b > -kInf,
            where + " interval must satisfy a < b");
    require(std::isfinite(p.c) && p.c > 0.0, where + ".c must be positive");
    require(std::isfinite(p.p), where + ".p must be finite");
    require(!(p.a <= 0.0 && p.b >= 0.0) || p.p > -1.0, where + ".p must exceed -1 on a piece touching 0");
  }
}

LineMeasure LineMeasure::lebesgue() { return LineMeasure({}, {{-kInf, kInf, 1.0, 0.0}}); }

LineMeasure LineMeasure::atom(double t, double weight) { return LineMeasure({{t, weight}}, {}); }

bool LineMeasure::poisson_integrable() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const LinePiece& p) { return (std::isfinite(p.a) && std::isfinite(p.b)) || p.p < 1.0; });
}

double LineMeasure::symmetric_mass(double l) const {
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (std::abs(a.location) <= l) total += a.weight;
  }
  for (const auto& p : pieces_) total += p.c * power_mass(p.p, std::max(p.a, -l), std::min(p.b, l));
  return total;
}

double LineMeasure::poisson(double y) const {
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight * y / (a.location * a.location + y * y);
  for (const auto& p : pieces_) {
    if (p.p == 0.0) {
      total += p.c * (std::atan(p.b / y) - std::atan(p.a / y));
      continue;
    }
    if ((std::isinf(p.a) || std::isinf(p.b)) && p.p >= 1.0) return kInf;
    // Reflect the negative half onto (0, ∞).
    if (p.b > 0.0) total += p.c * poisson_power(p.p, std::max(p.a, 0.0), p.b, y);
    if (p.a < 0.0) total += p.c * poisson_power(p.p, std::max(-p.b, 0.0), -p.a, y);
  }
  return total;
}

cplx w_pi(const VerticalMeasure& pi, double x) {
  if (x == 0.0) return {};
  const double s = kPi * std::abs(x);
  double v = 0.0;
  for (const auto& a : pi.atoms()) v += a.weight * s / (a.location * a.location + s * s);
  for (const auto& p : pi.pieces()) {
    if (p.p == 0.0) {
      v += p.c * (std::atan(p.b / s) - std::atan(p.a / s));
    } else if (std::isinf(p.b) && p.p >= 1.0) {
      v = kInf;
    } else {
      v += p.c * poisson_power(p.p, p.a, p.b, s);
    }
  }
  return {0.0, std::copysign(v, x)};
}

WeightSup w_pi_sup_report(const VerticalMeasure& pi) {
  WeightSup out;
  if (!vertical_carleson(pi).is_carleson) {
    out.value = kInf;
    out.is_carleson = false;
    return out;
  }
  auto points = log_grid(1e-8, 1e8, 4096);
  for (const auto& a : pi.atoms()) points.push_back(a.location / kPi);
  for (double b : pi.breakpoints()) {
    if (b > 0.0 && std::isfinite(b)) points.push_back(b / kPi);
  }
  const auto [value, at] = log_sup([&](double x) { return w_pi(pi, x).imag(); }, std::move(points));
  out.value = value;
  out.argmax = at;
  return out;
}

double w_pi_sup(const VerticalMeasure& pi) { return w_pi_sup_report(pi).value; }

namespace {

struct OddSamples {
  std::vector<double> x;
  std::vector<double> weighted;  // V(x_k) · taper(x_k) · dx
};

OddSamples truncated_samples(const VerticalMeasure& pi, double eps, double r, const FourierCheckParams& params) {
  require(eps > 0.0 && eps < r, "truncated W: need 0 < eps < R");
  require(params.half_width > 0.0 && params.spacing > 0.0, "truncated W: bad spatial grid");
  const VerticalMeasure window = pi.window(eps, r);
  const auto count = static_cast<std::size_t>(std::llround(params.half_width / params.spacing));
  OddSamples s;
  s.x.resize(count);
  s.weighted.resize(count);
  const double half = 0.5 * params.half_width;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = static_cast<double>(k + 1) * params.spacing;
    double taper = 1.0;
    if (x > half) {
      const double c = std::cos(0.5 * kPi * (x - half) / half);
      taper = c * c;
    }
    s.x[k] = x;
    s.weighted[k] = w_pi(window, x).imag() * taper * params.spacing;
  }
  return s;
}

double odd_transform(const OddSamples& s, double xi) {
  // W = iV with V real and odd, so Ŵ(ξ) = 2 Σ_{x>0} V(x) sin(2πxξ) dx.
  double total = 0.0;
  for (std::size_t k = 0; k < s.x.size(); ++k) total += s.weighted[k] * std::sin(2.0 * kPi * s.x[k] * xi);
  return 2.0 * total;
}

}  // namespace

double truncated_w_transform(const VerticalMeasure& pi, double eps, double r, double xi,
                             const FourierCheckParams& params) {
  return odd_transform(truncated_samples(pi, eps, r, params), xi);
}

FourierCheck w_pi_truncated_fourier_report(const VerticalMeasure& pi, double eps, double r,
                                           const FourierCheckParams& params) {
  require(params.xi_lo > 0.0 && params.xi_hi >= params.xi_lo && params.xi_count >= 1,
          "truncated W: the test frequencies must be positive");
  const OddSamples samples = truncated_samples(pi, eps, r, params);
  const VerticalMeasure window = pi.window(eps, r);
  FourierCheck out;
  for (int j = 0; j < params.xi_count; ++j) {
    const double xi = params.xi_count == 1
                          ? params.xi_lo
                          : params.xi_lo + (params.xi_hi - params.xi_lo) * j / (params.xi_count - 1);
    const double numeric = odd_transform(samples, xi);
    const double exact = laplace_transform(window, xi, LaplaceConvention::Two);
    out.xi.push_back(xi);
    out.numeric.push_back(numeric);
    out.exact.push_back(exact);
    out.max_error = std::max(out.max_error, std::abs(numeric - exact) / std::abs(exact));
  }
  return out;
}

double w_pi_truncated_fourier_check(const VerticalMeasure& pi, double eps, double r,
                                    const FourierCheckParams& params) {
  return w_pi_truncated_fourier_report(pi, eps, r, params).max_error;
}

double b2h_norm(const BandSignal& g, const VerticalMeasure& pi, LaplaceConvention convention) {
  double total = 0.0;
  const std::size_t last = g.size() - 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double mod2 = std::norm(g.values[k]);
    if (mod2 == 0.0) continue;
    const double weight = (k == 0 || k == last) ? 0.5 : 1.0;
    total += weight * mod2 * laplace_transform(pi, std::abs(g.xi(k)), convention);
  }
  return std::sqrt(total * g.d_xi);
}

std::vector<double> default_garnett_grid() { return log_grid(1e-6, 1e6, 40); }

GarnettReport garnett_check(const LineMeasure& nu, std::span<const double> y_grid, std::span<const double> l_grid) {
  GarnettReport out;
  out.integrable = nu.poisson_integrable();
  bool infinite = false;
  for (const auto& a : nu.atoms()) infinite |= a.location == 0.0;
  for (const auto& p : nu.pieces()) {
    infinite |= p.a <= 0.0 && p.b >= 0.0 && p.p < 0.0;
    infinite |= (std::isinf(p.a) || std::isinf(p.b)) && p.p > 0.0;
  }

  std::vector<double> extra;
  for (const auto& a : nu.atoms()) {
    if (a.location != 0.0) extra.push_back(std::abs(a.location));
  }
  for (const auto& p : nu.pieces()) {
    for (double e : {p.a, p.b}) {
      if (std::isfinite(e) && e != 0.0) extra.push_back(std::abs(e));
    }
  }

  std::vector<double> ys(y_grid.begin(), y_grid.end());
  ys.insert(ys.end(), extra.begin(), extra.end());
  out.poisson_grid_max = log_sup([&](double y) { return nu.poisson(y); }, std::move(ys)).first;

  std::vector<double> ls(l_grid.begin(), l_grid.end());
  ls.insert(ls.end(), extra.begin(), extra.end());
  for (double l : ls) out.box_grid_max = std::max(out.box_grid_max, nu.symmetric_mass(l) / (2.0 * l));

  out.poisson_sup = infinite ? kInf : out.poisson_grid_max;
  out.box_sup = infinite ? kInf : out.box_grid_max;
  return out;
}

GarnettReport garnett_check(const LineMeasure& nu) {
  const auto grid = default_garnett_grid();
  return garnett_check(nu, grid, grid);
}

double stability_ratio(const BandSignal& f_hat0, const BandSignal& g_hat0, const LineSamples& h,
                       const VerticalMeasure& pi, double r) {
  require(f_hat0.same_grid(g_hat0), "stability_ratio: f and g live on different frequency grids");
  require(r > 0.0, "stability_ratio: R must be positive");
  double scale = 1.0;
  for (cplx v : f_hat0.values) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < f_hat0.size(); ++k) {
    if (f_hat0.xi(k) < 0.0 && std::abs(f_hat0.values[k]) > 1e-9 * scale) {
      throw std::invalid_argument("stability_ratio: f is not analytic (spectrum at xi = " +
                                  std::to_string(f_hat0.xi(k)) + ")");
    }
  }
  const BandSignal h_hat = fourier_transform(h, f_hat0);
  double residual = 0.0;
  for (std::size_t k = 0; k < f_hat0.size(); ++k) {
    residual = std::max(residual, std::abs(f_hat0.values[k] - g_hat0.values[k] - h_hat.values[k]));
  }
  if (residual > 1e-9 * scale) {
    throw std::invalid_argument("stability_ratio: f != g + h (residual " + std::to_string(residual) + ")");
  }
  const VerticalMeasure truncated = pi.truncated(r);
  const double denominator = b2h_norm(g_hat0, truncated) + h.l1_norm();
  require(denominator > 0.0, "stability_ratio: g and h both vanish");
  return b2h_norm(f_hat0, truncated) / denominator;
}

double stability_constant(const VerticalMeasure& pi, double r) {
  return 2.0 * std::sqrt(2.0 + w_pi_sup(pi.truncated(r)));
}

double const_bpi(double c_b, const VerticalMeasure& pi) {
  require(c_b >= 1.0, "const_bpi: C_b must be at least 1");
  return std::sqrt(c_b + w_pi_sup(pi) + 1.0);
}

}  // namespace carleson
