#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carleson/measure.h"
#include "carleson/spectral.h"
#include "carleson/sumnorm.h"

namespace carleson {

/// A ratio whose denominator is a sum of certified sum-space norms. `value`
/// divides by the upper certificates (never overstates the true ratio);
/// `ceiling` divides by the lower ones.
struct RatioEstimate {
  double value = 0.0;
  double ceiling = 0.0;
  double numerator = 0.0;
  double denominator_upper = 0.0;
  double denominator_lower = 0.0;
};

/// ‖u‖₂ / (‖𝒜_μ u‖_{H_μ+L¹} + ‖ℋ𝒜_μ u‖_{H_μ+L¹}).
RatioEstimate bbb_ratio_estimate(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options = {});
double bbb_ratio(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options = {});

/// ‖u‖₂ / (‖𝒯_a u‖_{H_μ+L¹} + ‖𝒯_b 𝒯_a u‖_{H_μ+L¹}) for a pair built by adapted_pair().
RatioEstimate adapted_ineq_estimate(const CoeffVector& u, const RadialMeasure& mu, const AdaptedPair& pair,
                                    const SumNormOptions& options = {});
double adapted_ineq_ratio(const CoeffVector& u, const RadialMeasure& mu, const AdaptedPair& pair,
                          const SumNormOptions& options = {});

/// ‖f‖_{A²(μ)} / ‖f‖_{B²+h¹} for analytic nonzero f.
RatioEstimate embedding_estimate(const CoeffVector& f, const RadialMeasure& mu, const SumNormOptions& options = {});
double embedding_ratio(const CoeffVector& f, const RadialMeasure& mu, const SumNormOptions& options = {});

/// Harmonic extension of the Fejér kernel, coefficients (1 - |j|/N) for |j| ≤ N.
CoeffVector fejer_kernel(int n);

struct FejerRow {
  int n = 0;
  double h1_norm = 0.0;             ///< ‖F_N‖_{h¹}, by boundary quadrature
  double a2_norm_sq = 0.0;          ///< ‖Q₊F_N‖²_{A²(μ)} = 2π Σ (1 - j/N)² σ_j
  double partial_moment_sum = 0.0;  ///< Σ_{j≤N} σ_j
};

std::vector<FejerRow> fejer_experiment(const RadialMeasure& mu, std::span<const int> n_list);

enum class RatioKind { Bbb, Adapted, Embedding };

std::string to_string(RatioKind kind);

struct CorpusSpec {
  int n_max = 64;
  double smoothness = 1.0;  ///< coefficient variance (1 + |n|)^{-s}
  bool analytic = false;    ///< only n ≥ 0 (forced for Embedding)
};

/// Sample `index` of the corpus: independent complex Gaussian coefficients,
/// seeded from (seed, index) alone.
CoeffVector corpus_sample(const CorpusSpec& spec, std::uint64_t seed, std::size_t index);

struct InequalityReport {
  RatioKind kind = RatioKind::Bbb;
  std::vector<double> ratios;
  std::vector<double> ceilings;
  double max_ratio = 0.0;
  std::optional<double> constant_reference;
  std::uint64_t seed = 0;
  int corpus_size = 0;
  int n_max = 0;
  double smoothness = 1.0;
  double max_relative_gap = 0.0;  ///< worst (ceiling - ratio)/ratio over the corpus
};

/// Runs the selected ratio over `count` corpus samples. Workers are capped by
/// CARLESON_LAB_THREADS; the report does not depend on scheduling.
InequalityReport corpus_scan(const CorpusSpec& spec, const RadialMeasure& mu, int count, std::uint64_t seed,
                             RatioKind kind, const SumNormOptions& options = {},
                             std::optional<AdaptedPair> pair = std::nullopt);

/// Worker count from CARLESON_LAB_THREADS (default: hardware concurrency).
unsigned worker_count();

}  // namespace carleson
