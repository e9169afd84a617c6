#include "carleson/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "carleson/spaces.h"

namespace carleson {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_grid(const CoeffVector& u, const SumNormOptions& options) {
  if (options.m < 2 * static_cast<std::size_t>(u.n_max()) + 1) {
    throw std::invalid_argument("ratio: grid too coarse for the corpus degree");
  }
}

/// u rescaled to unit L² norm with its largest coefficient real and positive,
/// then snapped to multiples of 2^-32 so that u and λu reach the solver as
/// the same input.
CoeffVector canonical(const CoeffVector& u, double& scale) {
  const auto data = u.data();
  const auto peak = *std::max_element(data.begin(), data.end(),
                                      [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
  scale = l2_norm(u);
  CoeffVector v = u * (std::conj(peak) / (std::abs(peak) * scale));
  const auto snap = [](double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 32)), -32); };
  for (int n = -v.n_max(); n <= v.n_max(); ++n) v.at(n) = {snap(v[n].real()), snap(v[n].imag())};
  return v;
}

RatioEstimate finish(double numerator, double upper, double lower, double scale) {
  RatioEstimate r;
  r.numerator = numerator * scale;
  r.denominator_upper = upper * scale;
  r.denominator_lower = lower * scale;
  r.value = numerator / upper;
  r.ceiling = lower > 0.0 ? numerator / lower : kInf;
  return r;
}

RatioEstimate two_term_ratio(const CoeffVector& u, const CoeffVector& first, const CoeffVector& second,
                             std::span<const double> sigma, const SumNormOptions& options, double scale) {
  const CertifiedNorm a = sum_norm(first, sigma, options);
  const CertifiedNorm b = sum_norm(second, sigma, options);
  return finish(l2_norm(u), a.upper + b.upper, a.lower + b.lower, scale);
}

}  // namespace

RatioEstimate bbb_ratio_estimate(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options) {
  if (u.is_zero()) throw std::invalid_argument("bbb_ratio: u must be nonzero");
  check_grid(u, options);
  const auto sigma = moments(mu, u.n_max());
  double scale = 0.0;
  const CoeffVector v = canonical(u, scale);
  const CoeffVector av = multiplier(v, bergman_symbol(mu, v.n_max()));
  return two_term_ratio(v, av, hilbert(av), sigma, options, scale);
}

double bbb_ratio(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options) {
  return bbb_ratio_estimate(u, mu, options).value;
}

RatioEstimate adapted_ineq_estimate(const CoeffVector& u, const RadialMeasure& mu, const AdaptedPair& pair,
                                    const SumNormOptions& options) {
  if (u.is_zero()) throw std::invalid_argument("adapted_ineq_ratio: u must be nonzero");
  if (pair.n_max < u.n_max() || pair.a.size() != 2 * static_cast<std::size_t>(pair.n_max) + 1 ||
      pair.b.size() != pair.a.size()) {
    throw std::invalid_argument("adapted_ineq_ratio: pair does not cover the degree of u");
  }
  // Revalidate the adapted relation against this measure.
  const auto sigma = moments(mu, u.n_max());
  for (int n = -u.n_max(); n <= u.n_max(); ++n) {
    const auto i = static_cast<std::size_t>(n + pair.n_max);
    if (n == 0) {
      if (pair.a[i] == cplx{}) throw std::invalid_argument("adapted_ineq_ratio: a(0) = 0");
      continue;
    }
    const double lhs = std::norm(pair.a[i]) * pair.b[i].real() * sign_choice(n) * 2.0 * std::numbers::pi *
                       sigma[static_cast<std::size_t>(std::abs(n))];
    if (std::abs(pair.b[i].imag()) > 0.0 || std::abs(lhs - 1.0) > 1e-9) {
      throw std::invalid_argument("adapted_ineq_ratio: pair is not adapted to this measure at n = " +
                                  std::to_string(n));
    }
  }
  check_grid(u, options);
  double scale = 0.0;
  const CoeffVector v = canonical(u, scale);
  const CoeffVector tv = multiplier(v, pair.a);
  return two_term_ratio(v, tv, multiplier(tv, pair.b), sigma, options, scale);
}

double adapted_ineq_ratio(const CoeffVector& u, const RadialMeasure& mu, const AdaptedPair& pair,
                          const SumNormOptions& options) {
  return adapted_ineq_estimate(u, mu, pair, options).value;
}

RatioEstimate embedding_estimate(const CoeffVector& f, const RadialMeasure& mu, const SumNormOptions& options) {
  if (f.is_zero()) throw std::invalid_argument("embedding_ratio: f must be nonzero");
  if (!f.is_analytic()) throw std::invalid_argument("embedding_ratio: f must be analytic");
  check_grid(f, options);
  const auto sigma = moments(mu, f.n_max());
  double scale = 0.0;
  const CoeffVector g = canonical(f, scale);
  const CertifiedNorm s = sum_norm(g, sigma, options);
  return finish(hmu_norm(g, sigma), s.upper, s.lower, scale);
}

double embedding_ratio(const CoeffVector& f, const RadialMeasure& mu, const SumNormOptions& options) {
  return embedding_estimate(f, mu, options).value;
}

CoeffVector fejer_kernel(int n) {
  if (n < 1) throw std::invalid_argument("fejer_kernel: N must be at least 1");
  CoeffVector f(n);
  for (int j = -n; j <= n; ++j) f.at(j) = 1.0 - static_cast<double>(std::abs(j)) / n;
  return f;
}

std::vector<FejerRow> fejer_experiment(const RadialMeasure& mu, std::span<const int> n_list) {
  if (n_list.empty()) throw std::invalid_argument("fejer_experiment: empty N list");
  const int top = *std::max_element(n_list.begin(), n_list.end());
  const auto sigma = moments(mu, std::max(top, 1));
  std::vector<FejerRow> rows;
  for (int n : n_list) {
    const CoeffVector kernel = fejer_kernel(n);
    std::size_t m = 1;
    while (m < 2 * static_cast<std::size_t>(n) + 1) m <<= 1;
    FejerRow row;
    row.n = n;
    row.h1_norm = l1_norm(synthesize(kernel, m));
    const double norm = hmu_norm(analytic_projection(kernel), sigma);
    row.a2_norm_sq = norm * norm;
    for (int j = 0; j <= n; ++j) row.partial_moment_sum += sigma[static_cast<std::size_t>(j)];
    rows.push_back(row);
  }
  return rows;
}

std::string to_string(RatioKind kind) {
  switch (kind) {
    case RatioKind::Bbb: return "bbb";
    case RatioKind::Adapted: return "adapted";
    case RatioKind::Embedding: return "embedding";
  }
  return "unknown";
}

CoeffVector corpus_sample(const CorpusSpec& spec, std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
  std::normal_distribution<double> normal;
  CoeffVector u(spec.n_max);
  const int lowest = spec.analytic ? 0 : -spec.n_max;
  for (int n = lowest; n <= spec.n_max; ++n) {
    const double scale = std::sqrt(0.5 * std::pow(1.0 + std::abs(n), -spec.smoothness));
    const double re = normal(rng);
    const double im = normal(rng);
    u.at(n) = cplx(re, im) * scale;
  }
  return u;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CARLESON_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

InequalityReport corpus_scan(const CorpusSpec& spec, const RadialMeasure& mu, int count, std::uint64_t seed,
                             RatioKind kind, const SumNormOptions& options, std::optional<AdaptedPair> pair) {
  if (count < 1) throw std::invalid_argument("corpus_scan: count must be at least 1");
  CorpusSpec effective = spec;
  if (kind == RatioKind::Embedding) effective.analytic = true;
  if (kind == RatioKind::Adapted && !pair) pair = adapted_pair(mu, spec.n_max);

  InequalityReport report;
  report.kind = kind;
  report.seed = seed;
  report.corpus_size = count;
  report.n_max = spec.n_max;
  report.smoothness = spec.smoothness;
  report.ratios.assign(static_cast<std::size_t>(count), 0.0);
  report.ceilings.assign(static_cast<std::size_t>(count), 0.0);

  const auto run_one = [&](std::size_t i) {
    const CoeffVector u = corpus_sample(effective, seed, i);
    RatioEstimate r;
    switch (kind) {
      case RatioKind::Bbb: r = bbb_ratio_estimate(u, mu, options); break;
      case RatioKind::Adapted: r = adapted_ineq_estimate(u, mu, *pair, options); break;
      case RatioKind::Embedding: r = embedding_estimate(u, mu, options); break;
    }
    report.ratios[i] = r.value;
    report.ceilings[i] = r.ceiling;
  };

  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < static_cast<std::size_t>(count); i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    report.max_ratio = std::max(report.max_ratio, report.ratios[i]);
    report.max_relative_gap =
        std::max(report.max_relative_gap, (report.ceilings[i] - report.ratios[i]) / report.ratios[i]);
  }
  return report;
}

}  // namespace carleson
