#include "carleson/sumnorm.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "carleson/spaces.h"

namespace carleson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// prox of τ‖W·‖₂ with diagonal weights w_n² = 2πσ_n. Components with zero
/// weight pass through unchanged. `lambda` carries the secular-equation root
/// between calls as a warm start.
class WeightedNormProx {
 public:
  explicit WeightedNormProx(std::vector<double> w2) : w2_(std::move(w2)) {}

  void apply(std::span<const cplx> v, double tau, std::span<cplx> out) {
    double inv_sq = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (w2_[i] > 0.0) inv_sq += std::norm(v[i]) / w2_[i];
    }
    if (inv_sq <= tau * tau) {
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = w2_[i] > 0.0 ? cplx{} : v[i];
      return;
    }
    // Solve ψ(λ) = λ ‖W f(λ)‖ - τ = 0 with f_n = v_n / (1 + λ w_n²).
    const auto psi = [&](double lambda, double* slope) {
      double q = 0.0;
      double dq = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (w2_[i] == 0.0) continue;
        const double d = 1.0 / (1.0 + lambda * w2_[i]);
        const double t = w2_[i] * std::norm(v[i]) * d * d;
        q += t;
        dq -= 2.0 * w2_[i] * t * d;
      }
      const double root = std::sqrt(q);
      if (slope) *slope = root + (root > 0.0 ? lambda * dq / (2.0 * root) : 0.0);
      return lambda * root - tau;
    };
    double lo = 0.0;
    double hi = lambda_ > 0.0 ? lambda_ : 1.0;
    while (psi(hi, nullptr) < 0.0) {
      lo = hi;
      hi *= 4.0;
    }
    double lambda = std::clamp(lambda_, lo, hi);
    if (!(lambda > lo && lambda < hi)) lambda = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      double slope = 0.0;
      const double value = psi(lambda, &slope);
      if (value > 0.0) {
        hi = lambda;
      } else {
        lo = lambda;
      }
      if (std::abs(value) <= 1e-15 * tau || hi - lo <= 1e-15 * hi) break;
      double next = slope > 0.0 ? lambda - value / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      lambda = next;
    }
    lambda_ = lambda;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / (1.0 + lambda * w2_[i]);
  }

 private:
  std::vector<double> w2_;
  double lambda_ = 0.0;
};

double max_abs(std::span<const cplx> values) {
  double m = 0.0;
  for (cplx v : values) m = std::max(m, std::abs(v));
  return m;
}

double coeff_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double grid_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

/// Evaluates certificates for candidate primal and dual points.
class Certifier {
 public:
  Certifier(const CoeffVector& u, std::span<const double> sigma, const SpectralPlan& plan)
      : u_(u), sigma_(sigma), plan_(plan), u_samples_(plan.m()), work_(plan.m()), phi_hat_(u.n_max()) {
    plan_.synthesize(u_, u_samples_);
  }

  std::span<const cplx> u_samples() const { return u_samples_; }

  /// hmu_norm(f) + (1/M) Σ |u - f| on the grid.
  double primal(const CoeffVector& f) {
    plan_.synthesize(f, work_);
    double l1 = 0.0;
    for (std::size_t k = 0; k < work_.size(); ++k) l1 += std::abs(u_samples_[k] - work_[k]);
    return hmu_norm(f, sigma_) + l1 / static_cast<double>(work_.size());
  }

  /// Rescales φ to dual feasibility in place and returns the bound; zero-weight
  /// modes of φ̂ are removed first since they would make the bound vanish.
  double dual(std::vector<cplx>& phi) {
    plan_.analyze(phi, phi_hat_);
    bool corrected = false;
    CoeffVector free_modes(u_.n_max());
    for (int n = -u_.n_max(); n <= u_.n_max(); ++n) {
      if (!(sigma_[static_cast<std::size_t>(std::abs(n))] > 0.0) && phi_hat_[n] != cplx{}) {
        free_modes.at(n) = phi_hat_[n];
        phi_hat_.at(n) = 0.0;
        corrected = true;
      }
    }
    if (corrected) {
      plan_.synthesize(free_modes, work_);
      for (std::size_t k = 0; k < phi.size(); ++k) phi[k] -= work_[k];
    }
    const double scale = std::max(max_abs(phi), dual_hmu_norm(phi_hat_, sigma_));
    if (!(scale > 0.0)) return 0.0;
    cplx pairing{};
    for (int n = -u_.n_max(); n <= u_.n_max(); ++n) pairing += u_[n] * std::conj(phi_hat_[n]);
    const double value = std::abs(pairing) / scale;
    // Rotate so the pairing is real and nonnegative, then rescale.
    const cplx phase = std::abs(pairing) > 0.0 ? pairing / std::abs(pairing) : cplx{1.0};
    for (auto& p : phi) p *= phase / scale;
    return value;
  }

 private:
  const CoeffVector& u_;
  std::span<const double> sigma_;
  const SpectralPlan& plan_;
  std::vector<cplx> u_samples_;
  std::vector<cplx> work_;
  CoeffVector phi_hat_;
};

Decomposition make_decomposition(const CoeffVector& f, std::span<const cplx> u_samples, const SpectralPlan& plan) {
  Decomposition d;
  d.f = f;
  std::vector<cplx> fs(plan.m());
  plan.synthesize(f, fs);
  d.g.samples.resize(plan.m());
  double residual = 0.0;
  for (std::size_t k = 0; k < plan.m(); ++k) {
    d.g.samples[k] = u_samples[k] - fs[k];
    residual = std::max(residual, std::abs(fs[k] + d.g.samples[k] - u_samples[k]));
  }
  d.residual = residual;
  return d;
}

}  // namespace

double dual_hmu_norm(const CoeffVector& phi_hat, std::span<const double> sigma) {
  if (sigma.size() < static_cast<std::size_t>(phi_hat.n_max()) + 1) {
    throw std::invalid_argument("dual_hmu_norm: not enough moments");
  }
  double s = 0.0;
  for (int n = -phi_hat.n_max(); n <= phi_hat.n_max(); ++n) {
    const double sig = sigma[static_cast<std::size_t>(std::abs(n))];
    const double a = std::norm(phi_hat[n]);
    if (a == 0.0) continue;
    if (!(sig > 0.0)) return kInf;
    s += a / (kTwoPi * sig);
  }
  return std::sqrt(s);
}

double dual_bound(const CoeffVector& u, const GridFunction& phi, std::span<const double> sigma) {
  const std::size_t m = phi.m();
  if (m < 2 * static_cast<std::size_t>(u.n_max()) + 1) {
    throw std::invalid_argument("dual_bound: grid too coarse for the degree of u");
  }
  const double sup = max_abs(phi.samples);
  if (sup == 0.0) return 0.0;
  const CoeffVector phi_hat = analyze(phi, u.n_max());
  const double scale = std::max(sup, dual_hmu_norm(phi_hat, sigma));
  if (std::isinf(scale)) return 0.0;
  const GridFunction us = synthesize(u, m);
  cplx pairing{};
  for (std::size_t k = 0; k < m; ++k) pairing += us.samples[k] * std::conj(phi.samples[k]);
  return std::abs(pairing) / static_cast<double>(m) / scale;
}

double dual_bound(const CoeffVector& u, const GridFunction& phi, const RadialMeasure& mu) {
  return dual_bound(u, phi, moments(mu, u.n_max()));
}

CertifiedNorm sum_norm(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options) {
  return sum_norm(u, moments(mu, u.n_max()), options);
}

CertifiedNorm sum_norm(const CoeffVector& u, std::span<const double> sigma, const SumNormOptions& options) {
  const int n_max = u.n_max();
  const std::size_t m = options.m;
  if (m < 2 * static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("sum_norm: grid must have at least 2N+1 points");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("sum_norm: tol must be positive");
  if (sigma.size() < static_cast<std::size_t>(n_max) + 1) throw std::invalid_argument("sum_norm: not enough moments");

  const auto plan_ptr = plan_for(m);
  const SpectralPlan& plan = *plan_ptr;
  Certifier cert(u, sigma, plan);

  CertifiedNorm result;
  result.dual_witness.samples.assign(m, cplx{});
  if (u.is_zero()) {
    result.witness = make_decomposition(CoeffVector(n_max), cert.u_samples(), plan);
    return result;
  }

  const std::size_t d = u.size();
  std::vector<double> w2(d);
  for (int n = -n_max; n <= n_max; ++n) w2[static_cast<std::size_t>(n + n_max)] = kTwoPi * sigma[static_cast<std::size_t>(std::abs(n))];
  WeightedNormProx prox(std::move(w2));

  // Best certificates so far; single-term decompositions seed the upper bound.
  CoeffVector best_f(n_max);
  double best_upper = cert.primal(best_f);
  if (const double all_h = cert.primal(u); all_h < best_upper) {
    best_upper = all_h;
    best_f = u;
  }
  std::vector<cplx> best_phi(m, cplx{});
  double best_lower = 0.0;
  {
    // sgn(u) on the grid is the dual point of the pure L¹ term.
    std::vector<cplx> phi(cert.u_samples().begin(), cert.u_samples().end());
    for (auto& p : phi) p = std::abs(p) > 0.0 ? p / std::abs(p) : cplx{};
    best_lower = cert.dual(phi);
    best_phi = phi;
  }

  const auto done = [&] { return best_upper - best_lower <= options.tol * best_upper; };

  // Iterates: f (coefficients), φ (grid, |φ_k| ≤ 1).
  CoeffVector f = best_f;
  std::vector<cplx> phi = best_phi;
  CoeffVector f_next(n_max);
  CoeffVector f_avg(n_max);
  std::vector<cplx> phi_avg(m, cplx{});
  CoeffVector phi_hat(n_max);
  CoeffVector step_coeffs(n_max);
  std::vector<cplx> step_samples(m);
  std::vector<cplx> v(d);

  // τσ‖K‖² = η² < 1 with ‖K‖ = 1; `weight` balances primal and dual scales.
  constexpr double eta = 0.95;
  double weight = std::max(l2_norm(u), 1e-300);

  CoeffVector restart_f = f;
  std::vector<cplx> restart_phi = phi;
  double restart_gap = best_upper - best_lower;
  double last_candidate_gap = kInf;
  long since_restart = 0;
  long iter = 0;

  const auto evaluate_gap = [&](const CoeffVector& fc, std::vector<cplx>& phic) {
    const double up = cert.primal(fc);
    std::vector<cplx> scaled = phic;
    const double low = cert.dual(scaled);
    if (up < best_upper) {
      best_upper = up;
      best_f = fc;
    }
    if (low > best_lower) {
      best_lower = low;
      best_phi = scaled;
    }
    return up - low;
  };

  while (!done() && iter < options.max_iterations) {
    const double tau = eta * weight;
    const double sig = eta / weight;

    // f⁺ = prox_{τG}(f + τ φ̂)
    plan.analyze(phi, phi_hat);
    for (std::size_t i = 0; i < d; ++i) v[i] = f.data()[i] + tau * phi_hat.data()[i];
    prox.apply(v, tau, f_next.data());

    // φ⁺ = proj_{|·|≤1}(φ + σ S(u - 2f⁺ + f))
    for (std::size_t i = 0; i < d; ++i) {
      step_coeffs.data()[i] = u.data()[i] - 2.0 * f_next.data()[i] + f.data()[i];
    }
    plan.synthesize(step_coeffs, step_samples);
    for (std::size_t k = 0; k < m; ++k) {
      cplx p = phi[k] + sig * step_samples[k];
      const double a = std::abs(p);
      if (a > 1.0) p /= a;
      phi[k] = p;
    }
    std::swap(f, f_next);
    ++iter;
    ++since_restart;

    // Running averages since the last restart.
    const double w_new = 1.0 / static_cast<double>(since_restart);
    for (std::size_t i = 0; i < d; ++i) f_avg.data()[i] += w_new * (f.data()[i] - f_avg.data()[i]);
    for (std::size_t k = 0; k < m; ++k) phi_avg[k] += w_new * (phi[k] - phi_avg[k]);

    if (iter % options.check_every != 0) continue;

    const double gap_current = evaluate_gap(f, phi);
    const double gap_average = evaluate_gap(f_avg, phi_avg);
    const bool use_average = gap_average < gap_current;
    const double candidate_gap = std::min(gap_current, gap_average);

    const bool sufficient = candidate_gap <= 0.2 * restart_gap;
    const bool stalled = candidate_gap <= 0.8 * restart_gap && candidate_gap > last_candidate_gap;
    const bool long_run = static_cast<double>(since_restart) >= 0.36 * static_cast<double>(iter);
    last_candidate_gap = candidate_gap;
    if (!(sufficient || stalled || long_run)) continue;

    if (use_average) {
      f = f_avg;
      phi = phi_avg;
    }
    // Rebalance the primal weight from the movement since the last restart.
    const double dx = coeff_distance(f.data(), restart_f.data());
    const double dy = grid_distance(phi, restart_phi);
    if (dx > 1e-14 * l2_norm(u) && dy > 1e-14) {
      weight = std::exp(0.5 * std::log(dx / dy) + 0.5 * std::log(weight));
    }
    restart_f = f;
    restart_phi = phi;
    restart_gap = candidate_gap;
    last_candidate_gap = kInf;
    since_restart = 0;
    f_avg = f;
    phi_avg = phi;
  }

  result.upper = best_upper;
  result.lower = std::min(best_lower, best_upper);
  result.gap = best_upper - result.lower;
  result.iterations = iter;
  result.converged = done();
  result.witness = make_decomposition(best_f, cert.u_samples(), plan);
  result.dual_witness.samples = best_phi;
  return result;
}

}  // namespace carleson
