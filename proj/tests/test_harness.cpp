#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "carleson/harness.h"
#include "carleson/spaces.h"
#include "lp_oracle.h"
#include "oracles.h"

using namespace carleson;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

SumNormOptions grid(std::size_t m, double tol = 1e-6) {
  SumNormOptions options;
  options.m = m;
  options.tol = tol;
  return options;
}

/// Linear-programming value of the sum norm for a small instance.
double exact_sum_norm(const CoeffVector& u, const RadialMeasure& mu, int m) {
  const auto result = oracle::sum_norm_lp(u.data(), moments(mu, u.n_max()), m);
  return 0.5 * (result.lower + result.upper);
}

void check_brackets(const RatioEstimate& r, double exact) {
  const double slack = 1e-9 * exact;
  CHECK(r.value <= exact + slack);
  CHECK(r.ceiling >= exact - slack);
}
}  // namespace

TEST_CASE("bbb ratio of the constant function") {
  const RadialMeasure leb = RadialMeasure::lebesgue_disk();
  const CoeffVector e0 = CoeffVector::basis(0);
  const auto options = grid(16);
  const auto r = bbb_ratio_estimate(e0, leb, options);
  // 𝒜_μ e_0 = e_0 / √π and its Hilbert transform vanishes
  const double exact = 1.0 / exact_sum_norm(e0 * cplx(1.0 / std::sqrt(kPi)), leb, 16);
  MESSAGE("bbb ratio of e_0 under Lebesgue measure: ", r.value, " (linear program ", exact, ")");
  check_brackets(r, exact);
  CHECK(r.numerator == Approx(1.0));
  CHECK(bbb_ratio(e0, leb, options) == r.value);
  CHECK_THROWS_AS(bbb_ratio(CoeffVector(2), leb, options), std::invalid_argument);
  CHECK_THROWS_AS(bbb_ratio(CoeffVector::basis(20), leb, grid(16)), std::invalid_argument);
}

TEST_CASE("embedding ratio of 1 + z") {
  const RadialMeasure leb = RadialMeasure::lebesgue_disk();
  const CoeffVector f = CoeffVector::basis(0, 1) + CoeffVector::basis(1);
  const auto r = embedding_estimate(f, leb, grid(16));
  const double exact = std::sqrt(2.0 * kPi * (0.5 + 0.25)) / exact_sum_norm(f, leb, 16);
  MESSAGE("embedding ratio of 1 + z under Lebesgue measure: ", r.value, " (linear program ", exact, ")");
  check_brackets(r, exact);
  CHECK(r.value >= 1.0);
  CHECK_THROWS_AS(embedding_ratio(CoeffVector::basis(-1), leb, grid(16)), std::invalid_argument);
  CHECK_THROWS_AS(embedding_ratio(CoeffVector(1), leb, grid(16)), std::invalid_argument);
}

TEST_CASE("adapted pairs") {
  const RadialMeasure mu = RadialMeasure::power(1.0);
  const auto options = grid(32, 1e-6);
  const CoeffVector u = corpus_sample({6, 1.0, false}, 42, 0);
  const AdaptedPair standard = adapted_pair(mu, 6);
  const double base = bbb_ratio(u, mu, options);
  CHECK(adapted_ineq_ratio(u, mu, standard, options) == Approx(base).epsilon(2.0 * options.tol));

  const AdaptedPair doubled = adapted_pair(mu, 6, [](int n) { return 2.0 * sign_choice(n); });
  const double factor = adapted_ineq_ratio(u, mu, doubled, options) / base;
  MESSAGE("b = 2 sgn changes the ratio by ", factor);
  CHECK(factor >= 0.5);
  CHECK(factor <= 2.0);

  AdaptedPair broken = standard;
  broken.b[7] *= 1.5;
  CHECK_THROWS_AS(adapted_ineq_ratio(u, mu, broken, options), std::invalid_argument);
  CHECK_THROWS_AS(adapted_ineq_ratio(u, RadialMeasure::lebesgue_disk(), standard, options), std::invalid_argument);
  CHECK_THROWS_AS(adapted_ineq_ratio(corpus_sample({8, 1.0, false}, 42, 0), mu, standard, grid(32)),
                  std::invalid_argument);
}

TEST_CASE("Fejer kernel rows") {
  const int n_list[] = {1, 2, 3, 8, 64, 1024};
  for (const RadialMeasure& mu : {RadialMeasure::lebesgue_disk(), RadialMeasure::atom(0.3), RadialMeasure::power(1.0)}) {
    for (const auto& row : fejer_experiment(mu, n_list)) CHECK(row.h1_norm == Approx(1.0).epsilon(1e-14));
  }
  const int two[] = {2};
  const auto rows = fejer_experiment(RadialMeasure::lebesgue_disk(), two);
  CHECK(rows[0].a2_norm_sq == Approx(2.0 * kPi * 0.5625).epsilon(1e-14));
  CHECK(rows[0].a2_norm_sq == Approx(3.5343).epsilon(1e-4));
  CHECK(rows[0].partial_moment_sum == Approx(0.5 + 0.25 + 1.0 / 6.0).epsilon(1e-14));

  std::vector<int> all;
  for (int n = 1; n <= 2048; n *= 2) all.push_back(n);
  double top = 0.0;
  for (const auto& row : fejer_experiment(RadialMeasure::power(1.0), all)) top = std::max(top, row.a2_norm_sq);
  CHECK(top <= 2.0 * kPi * std::log(2.0));

  CHECK(fejer_kernel(4)[3].real() == Approx(0.25));
  CHECK(std::abs(fejer_kernel(4)[-4]) == 0.0);
  CHECK_THROWS_AS(fejer_kernel(0), std::invalid_argument);
  CHECK_THROWS_AS(fejer_experiment(RadialMeasure::lebesgue_disk(), std::span<const int>{}), std::invalid_argument);
}

TEST_CASE("corpus samples and scans") {
  const CorpusSpec spec{5, 1.0, false};
  CHECK(corpus_sample(spec, 42, 3).data()[0] == corpus_sample(spec, 42, 3).data()[0]);
  CHECK(corpus_sample(spec, 42, 3).data()[0] != corpus_sample(spec, 42, 4).data()[0]);
  CHECK(corpus_sample({5, 1.0, true}, 42, 0).is_analytic());

  const RadialMeasure leb = RadialMeasure::lebesgue_disk();
  const auto options = grid(16, 1e-5);
  const auto one = corpus_scan(spec, leb, 1, 42, RatioKind::Bbb, options);
  CHECK(one.ratios.size() == 1);
  CHECK(one.max_ratio == bbb_ratio(corpus_sample(spec, 42, 0), leb, options));
  CHECK(one.corpus_size == 1);
  CHECK(one.seed == 42);

  const auto embed = corpus_scan(spec, leb, 3, 42, RatioKind::Embedding, options);
  CHECK(embed.max_ratio == embedding_ratio(corpus_sample({5, 1.0, true}, 42, 1), leb, options));

  ::setenv("CARLESON_LAB_THREADS", "1", 1);
  const auto serial = corpus_scan(spec, leb, 6, 7, RatioKind::Adapted, options);
  ::setenv("CARLESON_LAB_THREADS", "4", 1);
  const auto parallel = corpus_scan(spec, leb, 6, 7, RatioKind::Adapted, options);
  ::unsetenv("CARLESON_LAB_THREADS");
  CHECK(serial.ratios == parallel.ratios);
  CHECK(serial.ceilings == parallel.ceilings);
  CHECK(serial.max_ratio == parallel.max_ratio);
  CHECK_THROWS_AS(corpus_scan(spec, leb, 0, 42, RatioKind::Bbb, options), std::invalid_argument);
  CHECK(to_string(RatioKind::Adapted) == "adapted");
}

TEST_CASE("property: ratios are scale invariant") {
  oracle::Rng rng(oracle::kSeed);
  const auto options = grid(24, 1e-5);
  double worst = 0.0;
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng, true);
    const int n = std::uniform_int_distribution<int>(0, 5)(rng);
    const CoeffVector u = oracle::random_coeffs(rng, n);
    const CoeffVector f = oracle::random_coeffs(rng, n, true);
    const cplx lambda = std::polar(std::exp(oracle::uniform(rng, -5.0, 5.0)), oracle::uniform(rng, -kPi, kPi));
    const AdaptedPair pair = adapted_pair(mu, n);
    const double pairs[][2] = {
        {bbb_ratio(u, mu, options), bbb_ratio(lambda * u, mu, options)},
        {adapted_ineq_ratio(u, mu, pair, options), adapted_ineq_ratio(lambda * u, mu, pair, options)},
        {embedding_ratio(f, mu, options), embedding_ratio(lambda * f, mu, options)},
    };
    for (const auto& p : pairs) {
      worst = std::max(worst, oracle::rel_err(p[1], p[0]));
      CHECK(p[1] == Approx(p[0]).epsilon(1e-12));
    }
  }
  MESSAGE("largest relative change under u -> λu: ", worst);
}

TEST_CASE("property: embedding ratio is at least one") {
  oracle::Rng rng(oracle::kSeed + 1);
  const auto options = grid(32, 1e-5);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    const CoeffVector f = oracle::random_coeffs(rng, std::uniform_int_distribution<int>(0, 8)(rng), true);
    CHECK(embedding_ratio(f, mu, options) >= 1.0 - 10.0 * options.tol);
  }
}

TEST_CASE("property: Fejer norms grow without bound exactly when the moment series diverges") {
  oracle::Rng rng(oracle::kSeed + 2);
  std::vector<int> n_list;
  for (int n = 1; n <= 2048; n *= 2) n_list.push_back(n);
  int divergent = 0;
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    const auto rows = fejer_experiment(mu, n_list);
    const auto sigma = moments(mu, 2048);
    const double series = singular_integral(mu);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CHECK(rows[k].h1_norm == Approx(1.0).epsilon(1e-13));
      if (k > 0) CHECK(rows[k].a2_norm_sq >= rows[k - 1].a2_norm_sq * (1.0 - 1e-14));
      double half = 0.0;
      for (int j = 0; j <= rows[k].n / 2; ++j) half += sigma[static_cast<std::size_t>(j)];
      CHECK(rows[k].a2_norm_sq >= 0.5 * kPi * half * (1.0 - 1e-12));
      if (std::isfinite(series)) CHECK(rows[k].a2_norm_sq <= series * (1.0 + 1e-10));
    }
    if (std::isinf(series)) {
      ++divergent;
      CHECK(rows.back().a2_norm_sq > rows[rows.size() - 2].a2_norm_sq);
    }
  }
  MESSAGE(divergent, " of ", oracle::kCases, " random measures have a divergent moment series");
  CHECK(divergent > 0);
}

TEST_CASE("property: doubling the corpus only adds samples") {
  oracle::Rng rng(oracle::kSeed + 3);
  const auto options = grid(12, 1e-5);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng, true);
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    const std::uint64_t seed = rng();
    const auto kind = static_cast<RatioKind>(std::uniform_int_distribution<int>(0, 2)(rng));
    const CorpusSpec spec{std::uniform_int_distribution<int>(0, 4)(rng), oracle::uniform(rng, 0.0, 2.0), false};
    const auto small = corpus_scan(spec, mu, count, seed, kind, options);
    const auto large = corpus_scan(spec, mu, 2 * count, seed, kind, options);
    bool prefix = true;
    double added = 0.0;
    for (int k = 0; k < 2 * count; ++k) {
      if (k < count) {
        prefix = prefix && small.ratios[static_cast<std::size_t>(k)] == large.ratios[static_cast<std::size_t>(k)];
      } else {
        added = std::max(added, large.ratios[static_cast<std::size_t>(k)]);
      }
    }
    CHECK(prefix);
    CHECK(large.max_ratio == std::max(small.max_ratio, added));
  }
}
