#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "carleson/measure.h"
#include "oracles.h"

using namespace carleson;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

std::string rejection(const std::function<void()>& build) {
  try {
    build();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("radial measures validate their fields") {
  CHECK(rejection([] { RadialMeasure({{1.0, 1.0}}, {}); }).find("atoms[0]") != std::string::npos);
  CHECK(rejection([] { RadialMeasure({{0.5, -1.0}}, {}); }).find("atoms[0].w") != std::string::npos);
  CHECK(rejection([] { RadialMeasure({}, {{0.5, 0.2, 1.0, 0.0, 0.0}}); }).find("pieces[0]") != std::string::npos);
  CHECK(rejection([] { RadialMeasure({}, {{0.0, 1.0, 0.0, 0.0, 0.0}}); }).find("pieces[0].c") != std::string::npos);
  CHECK(rejection([] { RadialMeasure({}, {{0.0, 1.0, 1.0, -1.0, 0.0}}); }).find("pieces[0].p") != std::string::npos);
  CHECK_NOTHROW(RadialMeasure({}, {{0.0, 0.5, 1.0, -0.9, 0.0}}));
}

TEST_CASE("moments of the Lebesgue disk measure and of (1 - r) dr") {
  const auto leb = moments(RadialMeasure::lebesgue_disk(), 1024);
  const auto lin = moments(RadialMeasure::power(1.0), 1024);
  for (int n = 0; n <= 1024; ++n) {
    CHECK(leb[static_cast<std::size_t>(n)] == Approx(1.0 / (2.0 * n + 2.0)).epsilon(1e-12));
    CHECK(lin[static_cast<std::size_t>(n)] == Approx(1.0 / ((2.0 * n + 1.0) * (2.0 * n + 2.0))).epsilon(1e-12));
  }
  CHECK(moment(RadialMeasure::atom(0.5, 2.0), 3) == Approx(2.0 * std::pow(0.25, 3)).epsilon(1e-15));
  CHECK(moment(RadialMeasure::atom(0.0), 0) == 1.0);
  CHECK(moment(RadialMeasure::atom(0.0), 2) == 0.0);
}

TEST_CASE("high moments stay positive and match the log-domain value") {
  const RadialMeasure mu = RadialMeasure::power(2.0, 0.0, 0.5) + RadialMeasure::atom(0.2);
  const double s = moment(mu, 10000);
  CHECK(s >= 0.0);
  CHECK(std::isfinite(log_moment(mu, 10000)));
  // the (1 - r)^2 piece on [0, 1/2) dominates with r^{2n} ≈ 2^{-2n}
  CHECK(log_moment(mu, 10000) < -10000.0 * std::log(4.0) + 10.0);
  CHECK(log_moment(RadialMeasure::lebesgue_disk(), 10000) == Approx(-std::log(20002.0)).epsilon(1e-12));
}

TEST_CASE("masses and tails") {
  const RadialMeasure leb = RadialMeasure::lebesgue_disk();
  CHECK(leb.total_mass() == Approx(0.5));
  CHECK(leb.tail_mass(0.1) == Approx(0.1 - 0.005).epsilon(1e-14));
  const RadialMeasure a = RadialMeasure::atom(0.75);
  CHECK(a.mass(0.75, 1.0) == 1.0);
  CHECK(a.mass(0.0, 0.75) == 0.0);
  CHECK(RadialMeasure::power(-0.5).tail_mass(0.04) == Approx(0.4).epsilon(1e-13));
  CHECK(leb.restricted(0.5).total_mass() == Approx(0.125));
}

TEST_CASE("radial Carleson verdicts") {
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(std::ldexp(1.0, -k));
  const auto leb = radial_carleson(RadialMeasure::lebesgue_disk(), grid);
  CHECK(leb.is_carleson);
  CHECK(leb.sup_ratio == Approx(1.0 - std::ldexp(1.0, -21)).epsilon(1e-14));

  const auto atom = radial_carleson(RadialMeasure::atom(0.75));
  CHECK(atom.is_carleson);
  CHECK(atom.sup_ratio == Approx(4.0).epsilon(1e-14));

  const auto bad = radial_carleson(RadialMeasure::power(-0.5));
  CHECK_FALSE(bad.is_carleson);
  CHECK(std::isinf(bad.sup_ratio));
  CHECK(boundary_accessible(RadialMeasure::lebesgue_disk()));
}

TEST_CASE("singular integral") {
  CHECK(std::isinf(singular_integral(RadialMeasure::lebesgue_disk())));
  CHECK(singular_integral(RadialMeasure::power(1.0)) == Approx(2.0 * kPi * std::log(2.0)).epsilon(1e-12));
  CHECK(singular_integral(RadialMeasure::atom(0.6)) == Approx(2.0 * kPi / 0.64).epsilon(1e-14));
  const RadialMeasure mu({}, {{0.2, 1.0, 1.5, 0.5, 1.0}});
  const double oracle_value = 2.0 * kPi * oracle::integrate_radial(mu, [](double r, double s) { return 1.0 / (s * (1.0 + r)); });
  CHECK(singular_integral(mu) == Approx(oracle_value).epsilon(1e-10));
}

TEST_CASE("vertical measures") {
  const auto leb = vertical_carleson(VerticalMeasure::lebesgue());
  CHECK(leb.is_carleson);
  CHECK(leb.sup_ratio == Approx(1.0).epsilon(1e-14));
  const auto atom = vertical_carleson(VerticalMeasure::atom(2.0));
  CHECK(atom.is_carleson);
  CHECK(atom.sup_ratio == Approx(0.5).epsilon(1e-14));
  CHECK_FALSE(vertical_carleson(VerticalMeasure({}, {{0.0, kInf, 1.0, -0.5}})).is_carleson);
  CHECK_FALSE(vertical_carleson(VerticalMeasure({}, {{1.0, kInf, 1.0, 0.5}})).is_carleson);
  CHECK(vertical_carleson(VerticalMeasure({}, {{0.0, 3.0, 1.0, 0.5}})).is_carleson);
  CHECK(VerticalMeasure::lebesgue().cumulative(3.0) == Approx(3.0));
  CHECK(VerticalMeasure::lebesgue().truncated(2.0).mass(0.0, kInf) == Approx(2.0));
  CHECK(rejection([] { VerticalMeasure({{0.0, 1.0}}, {}); }).find("atoms[0]") != std::string::npos);
}

TEST_CASE("Laplace transform conventions") {
  const auto leb = VerticalMeasure::lebesgue();
  CHECK(laplace_transform(leb, 1.0, LaplaceConvention::Two) == Approx(0.5).epsilon(1e-14));
  CHECK(laplace_transform(leb, 1.0) == Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  CHECK(laplace_transform(leb, 0.0) == 0.0);
  CHECK(laplace_transform(VerticalMeasure::atom(0.5), 0.0) == 0.0);
  CHECK(laplace_transform(leb, -2.0, LaplaceConvention::Two) == Approx(0.25).epsilon(1e-14));
  CHECK(laplace_transform(VerticalMeasure::atom(0.3, 2.0), 1.5, LaplaceConvention::Two) ==
        Approx(2.0 * std::exp(-0.9)).epsilon(1e-14));
}

TEST_CASE("property: moments agree with an independent quadrature") {
  oracle::Rng rng(oracle::kSeed);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    for (int n : {0, 1, 5, 40}) {
      const double expected = oracle::integrate_radial(mu, [n](double r) { return std::pow(r, 2 * n); });
      CHECK(moment(mu, n) == Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("property: moments are positive, nonincreasing and log-convex") {
  oracle::Rng rng(oracle::kSeed + 1);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    const auto s = moments(mu, 256);
    std::vector<double> l(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) l[n] = log_moment(mu, static_cast<long>(n));
    bool ok = true;
    for (std::size_t n = 0; n < s.size(); ++n) {
      ok = ok && s[n] >= 0.0 && std::isfinite(l[n]);
      if (n >= 1) ok = ok && s[n] <= s[n - 1] * (1.0 + 1e-14) && l[n] <= l[n - 1] + 1e-14;
      if (n >= 1 && n + 1 < s.size()) ok = ok && 2.0 * l[n] <= l[n - 1] + l[n + 1] + 1e-12;
    }
    CHECK(ok);
  }
}

TEST_CASE("property: moment lower bound from the mass near the boundary") {
  oracle::Rng rng(oracle::kSeed + 2);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    const auto s = moments(mu, 64);
    for (double rho : {0.1, 0.5, 0.9, 0.99}) {
      for (int n : {1, 8, 64}) {
        CHECK(s[static_cast<std::size_t>(n)] >= std::pow(rho, 2 * n) * mu.mass(rho, 1.0) * (1.0 - 1e-12));
      }
    }
  }
}

TEST_CASE("property: Laplace transform is decreasing and additive") {
  oracle::Rng rng(oracle::kSeed + 3);
  for (int i = 0; i < oracle::kCases; ++i) {
    const VerticalMeasure p1 = oracle::random_vertical(rng);
    const VerticalMeasure p2 = oracle::random_vertical(rng);
    const double xi = oracle::uniform(rng, 0.05, 3.0);
    for (auto conv : {LaplaceConvention::FourPi, LaplaceConvention::Two}) {
      const double l = laplace_transform(p1, xi, conv);
      CHECK(laplace_transform(p1, 1.1 * xi, conv) < l);
      CHECK(laplace_transform(p1 + p2, xi, conv) ==
            Approx(l + laplace_transform(p2, xi, conv)).epsilon(1e-12));
    }
    const double kappa = 2.0;
    const double expected = oracle::integrate_vertical(p1, [&](double y) { return std::exp(-kappa * y * xi); });
    CHECK(laplace_transform(p1, xi, LaplaceConvention::Two) == Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("property: interior mass never changes the Carleson verdict") {
  oracle::Rng rng(oracle::kSeed + 4);
  for (int i = 0; i < oracle::kCases; ++i) {
    const RadialMeasure mu = oracle::random_radial(rng);
    std::vector<RadialPiece> pieces;
    const double a = oracle::uniform(rng, 0.0, 0.4);
    pieces.push_back({a, oracle::uniform(rng, a + 0.01, 0.5), oracle::uniform(rng, 0.1, 5.0),
                      oracle::uniform(rng, -0.9, 3.0), oracle::uniform(rng, 0.0, 2.0)});
    const RadialMeasure interior({{oracle::uniform(rng, 0.0, 0.5), oracle::uniform(rng, 0.1, 5.0)}}, pieces);
    CHECK(radial_carleson(mu).is_carleson == radial_carleson(mu + interior).is_carleson);
  }
}
