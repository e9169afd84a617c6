#include "carleson/spectral.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace carleson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t wrap(long n, std::size_t m) {
  const long mm = static_cast<long>(m);
  return static_cast<std::size_t>(((n % mm) + mm) % mm);
}

void check_synthesis_size(int n_max, std::size_t m) {
  if (m < 2 * static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("grid of " + std::to_string(m) + " points cannot carry degree " +
                                std::to_string(n_max) + " (need m >= 2N+1)");
  }
}

std::mutex& fftw_planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoeffVector

CoeffVector::CoeffVector(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("CoeffVector: negative degree");
  coeffs_.assign(2 * static_cast<std::size_t>(n_max) + 1, cplx{});
}

CoeffVector::CoeffVector(int n_max, std::vector<cplx> coeffs) : n_max_(n_max), coeffs_(std::move(coeffs)) {
  if (n_max < 0 || coeffs_.size() != 2 * static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("CoeffVector: expected 2N+1 coefficients");
  }
}

CoeffVector CoeffVector::basis(int n, int n_max) {
  CoeffVector v(std::max(n_max, std::abs(n)));
  v.at(n) = 1.0;
  return v;
}

cplx CoeffVector::operator[](int n) const {
  if (n < -n_max_ || n > n_max_) return {};
  return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

cplx& CoeffVector::at(int n) {
  if (n < -n_max_ || n > n_max_) throw std::out_of_range("CoeffVector index outside [-N, N]");
  return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

CoeffVector CoeffVector::resized(int n_max) const {
  CoeffVector out(n_max);
  const int common = std::min(n_max, n_max_);
  for (int n = -common; n <= common; ++n) out.at(n) = (*this)[n];
  return out;
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& other) {
  if (other.n_max_ > n_max_) *this = resized(other.n_max_);
  for (int n = -other.n_max_; n <= other.n_max_; ++n) at(n) += other[n];
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& other) {
  if (other.n_max_ > n_max_) *this = resized(other.n_max_);
  for (int n = -other.n_max_; n <= other.n_max_; ++n) at(n) -= other[n];
  return *this;
}

CoeffVector& CoeffVector::operator*=(cplx scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

bool CoeffVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

bool CoeffVector::is_analytic() const {
  for (int n = -n_max_; n < 0; ++n) {
    if ((*this)[n] != cplx{}) return false;
  }
  return true;
}

double GridFunction::node(std::size_t k, std::size_t m) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(m);
}

// ---------------------------------------------------------------------------
// Transforms

SpectralPlan::SpectralPlan(std::size_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("SpectralPlan: empty grid");
  std::vector<cplx> buffer(m);
  auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
  const int n = static_cast<int>(m);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(fftw_planner_mutex());
  forward_ = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, flags);
  if (!forward_ || !backward_) throw std::runtime_error("SpectralPlan: FFTW could not plan length " + std::to_string(m));
}

SpectralPlan::~SpectralPlan() {
  std::lock_guard lock(fftw_planner_mutex());
  if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void SpectralPlan::synthesize(const CoeffVector& u, std::span<cplx> out) const {
  const int n_max = u.n_max();
  check_synthesis_size(n_max, m_);
  if (out.size() != m_) throw std::invalid_argument("synthesize: output size mismatch");
  std::fill(out.begin(), out.end(), cplx{});
  for (int n = -n_max; n <= n_max; ++n) out[wrap(n, m_)] = u[n];
  auto* data = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), data, data);
}

void SpectralPlan::analyze(std::span<const cplx> samples, CoeffVector& out) const {
  const int n_max = out.n_max();
  if (samples.size() != m_) throw std::invalid_argument("analyze: sample count mismatch");
  if (2 * static_cast<std::size_t>(n_max) + 1 > m_) {
    throw std::invalid_argument("analyze: n_max = " + std::to_string(n_max) + " too large for " +
                                std::to_string(m_) + " samples");
  }
  const double scale = 1.0 / static_cast<double>(m_);
  std::vector<cplx> work(samples.begin(), samples.end());
  auto* data = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_), data, data);
  for (int n = -n_max; n <= n_max; ++n) out.at(n) = work[wrap(n, m_)] * scale;
}

std::shared_ptr<const SpectralPlan> plan_for(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const SpectralPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const SpectralPlan>(m);
  return slot;
}

GridFunction synthesize_direct(const CoeffVector& u, std::size_t m) {
  check_synthesis_size(u.n_max(), m);
  GridFunction g{std::vector<cplx>(m)};
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = GridFunction::node(k, m);
    cplx sum{};
    for (int n = -u.n_max(); n <= u.n_max(); ++n) sum += u[n] * std::polar(1.0, n * theta);
    g.samples[k] = sum;
  }
  return g;
}

CoeffVector analyze_direct(const GridFunction& g, int n_max) {
  const std::size_t m = g.m();
  if (2 * static_cast<std::size_t>(n_max) + 1 > m) throw std::invalid_argument("analyze: n_max too large");
  CoeffVector out(n_max);
  for (int n = -n_max; n <= n_max; ++n) {
    cplx sum{};
    for (std::size_t k = 0; k < m; ++k) sum += g.samples[k] * std::polar(1.0, -n * GridFunction::node(k, m));
    out.at(n) = sum / static_cast<double>(m);
  }
  return out;
}

GridFunction synthesize(const CoeffVector& u, std::size_t m) {
  check_synthesis_size(u.n_max(), m);
  GridFunction g{std::vector<cplx>(m)};
  plan_for(m)->synthesize(u, g.samples);
  return g;
}

CoeffVector analyze(const GridFunction& g, int n_max) {
  if (n_max < 0) throw std::invalid_argument("analyze: negative degree");
  CoeffVector out(n_max);
  plan_for(g.m())->analyze(g.samples, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and multipliers

cplx evaluate(const CoeffVector& u, cplx z) {
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("evaluate: point must lie in the open disk");
  // Horner on both halves: Σ_{n≥0} c_n z^n + Σ_{n≥1} c_{-n} z̄^n.
  cplx pos{};
  cplx neg{};
  for (int n = u.n_max(); n >= 1; --n) {
    pos = pos * z + u[n];
    neg = neg * std::conj(z) + u[-n];
  }
  return pos * z + u[0] + neg * std::conj(z);
}

CoeffVector poisson_dilate(const CoeffVector& u, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("poisson_dilate: r must lie in [0, 1]");
  CoeffVector out = u;
  double power = 1.0;
  for (int n = 1; n <= u.n_max(); ++n) {
    power *= r;
    out.at(n) *= power;
    out.at(-n) *= power;
  }
  return out;
}

CoeffVector hilbert(const CoeffVector& u) {
  CoeffVector out = u;
  out.at(0) = 0.0;
  for (int n = 1; n <= u.n_max(); ++n) out.at(-n) = -out.at(-n);
  return out;
}

CoeffVector analytic_projection(const CoeffVector& u) {
  CoeffVector out = u;
  for (int n = 1; n <= u.n_max(); ++n) out.at(-n) = 0.0;
  return out;
}

Symbol make_symbol(int n_max, const std::function<cplx(int)>& a) {
  Symbol s(2 * static_cast<std::size_t>(n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n) s[static_cast<std::size_t>(n + n_max)] = a(n);
  return s;
}

CoeffVector multiplier(const CoeffVector& u, const Symbol& a) {
  if (a.size() < u.size() || a.size() % 2 == 0) {
    throw std::invalid_argument("multiplier: symbol does not cover [-N, N]");
  }
  const int offset = static_cast<int>(a.size() / 2);
  CoeffVector out = u;
  for (int n = -u.n_max(); n <= u.n_max(); ++n) out.at(n) *= a[static_cast<std::size_t>(n + offset)];
  return out;
}

double sign_choice(int n) { return n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0); }

Symbol bergman_symbol(const RadialMeasure& mu, int n_max) {
  const auto sigma = moments(mu, n_max);
  return make_symbol(n_max, [&](int n) {
    return cplx(1.0 / std::sqrt(2.0 * std::numbers::pi * sigma[static_cast<std::size_t>(std::abs(n))]));
  });
}

AdaptedPair adapted_pair(const RadialMeasure& mu, int n_max, const std::function<double(int)>& b_choice) {
  if (n_max < 0) throw std::invalid_argument("adapted_pair: negative degree");
  const auto sigma = moments(mu, n_max);
  if (!(sigma[0] > 0.0)) throw std::invalid_argument("adapted_pair: a(0) would vanish (zero mass)");
  AdaptedPair pair;
  pair.n_max = n_max;
  pair.a.assign(2 * static_cast<std::size_t>(n_max) + 1, cplx{});
  pair.b.assign(pair.a.size(), cplx{});
  pair.c_b = 1.0;
  const auto idx = [n_max](int n) { return static_cast<std::size_t>(n + n_max); };
  pair.a[idx(0)] = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma[0]);
  pair.b[idx(0)] = b_choice(0);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    const double b = b_choice(n);
    const double s = sign_choice(n);
    if (!std::isfinite(b) || b == 0.0) {
      throw std::invalid_argument("adapted_pair: b(" + std::to_string(n) + ") must be finite and nonzero");
    }
    if (b * s <= 0.0) {
      throw std::invalid_argument("adapted_pair: b(" + std::to_string(n) + ") sgn(n) must be positive");
    }
    const double sig = sigma[static_cast<std::size_t>(std::abs(n))];
    if (!(sig > 0.0)) throw std::invalid_argument("adapted_pair: vanishing moment");
    const double a = 1.0 / std::sqrt(2.0 * std::numbers::pi * sig * b * s);
    const double check = a * a * b * s * 2.0 * std::numbers::pi * sig;
    if (std::abs(check - 1.0) > 1e-12) throw std::logic_error("adapted_pair: normalization check failed");
    pair.a[idx(n)] = a;
    pair.b[idx(n)] = b;
    pair.c_b = std::max({pair.c_b, std::abs(b), 1.0 / std::abs(b)});
  }
  return pair;
}

}  // namespace carleson
