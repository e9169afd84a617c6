#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "carleson/quadrature.h"
#include "oracles.h"

using namespace carleson::quadrature;

TEST_CASE("Gauss-Legendre rule integrates polynomials up to degree 2n - 1") {
  const auto& rule = gauss_legendre(20);
  for (int k = 0; k < 40; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("adaptive rule on smooth and kinked integrands") {
  CHECK(adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  CHECK(adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0) ==
        doctest::Approx(0.045 + 0.245).epsilon(1e-12));
  const double breaks[] = {0.3};
  CHECK(adaptive_split([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, breaks) ==
        doctest::Approx(0.29).epsilon(1e-14));
  CHECK(adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("endpoint singular rules reproduce Beta integrals") {
  for (double e : {-0.9, -0.5, 0.0, 0.7}) {
    for (double q : {0.0, 1.0, 3.5}) {
      const double exact = boost::math::beta(e + 1.0, q + 1.0);
      CHECK(right_singular([q](double x) { return std::pow(x, q); }, 0.0, 1.0, e) ==
            doctest::Approx(exact).epsilon(1e-12));
      CHECK(left_singular([q](double x) { return std::pow(1.0 - x, q); }, 0.0, 1.0, e) ==
            doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("semi-infinite rule") {
  CHECK(semi_infinite([](double x) { return std::exp(-x); }, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(semi_infinite([](double x) { return 1.0 / (x * x); }, 1e6) == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, -5.0) ==
        doctest::Approx(std::numbers::pi / 2 + std::atan(5.0)).epsilon(1e-12));
}

TEST_CASE("property: adaptive rules agree with tanh-sinh on random integrands") {
  oracle::Rng rng(oracle::kSeed);
  for (int i = 0; i < oracle::kCases; ++i) {
    const double a = oracle::uniform(rng, -2.0, 1.0);
    const double b = a + oracle::uniform(rng, 0.1, 3.0);
    const double k = oracle::uniform(rng, 0.1, 8.0);
    const double e = oracle::uniform(rng, -0.95, 1.5);
    const auto f = [k](double x) { return std::cos(k * x) + 0.5 * std::exp(-x * x); };
    CHECK(adaptive(f, a, b) == doctest::Approx(oracle::integrate(f, a, b)).epsilon(1e-11));
    const double right = oracle::integrate_power([&](double y) { return f(b - y); }, e, b - a);
    CHECK(right_singular(f, a, b, e) == doctest::Approx(right).epsilon(1e-10));
    const double left = oracle::integrate_power([&](double y) { return f(a + y); }, e, b - a);
    CHECK(left_singular(f, a, b, e) == doctest::Approx(left).epsilon(1e-10));
  }
}
