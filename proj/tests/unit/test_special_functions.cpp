#include <doctest.h>

#include <cmath>
#include <numbers>

#include "argl/errors.hpp"
#include "argl/special_functions.hpp"
#include "oracles.hpp"

using namespace argl;

namespace {
// C1 frozen after the adaptive-Simpson path and the double-exponential
// trapezoid oracle agreed (difference 4e-14).
constexpr double kC1Fixture = -1.08932652234357;
}  // namespace

TEST_CASE("I0 against the long double Taylor series") {
  for (double t : {0.0, 1e-8, 0.3, 1.0, 2.5, 7.0, 15.0, 29.9, 30.1, 45.0, 80.0}) {
    const double ref = static_cast<double>(oracle::bessel_i0_taylor(t));
    CHECK(bessel_i0(t) == doctest::Approx(ref).epsilon(1e-13));
  }
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK_THROWS_AS(bessel_i0(701.0), OverflowError);
  CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
}

TEST_CASE("log I0 against the integral representation") {
  for (double t : {1e-5, 0.01, 0.5, 1.0, 10.0, 29.0, 31.0, 100.0, 699.0, 701.0, 1500.0, 1e5, 1e9}) {
    CHECK(log_bessel_i0(t) == doctest::Approx(oracle::log_i0_integral(t)).epsilon(1e-13));
  }
}

TEST_CASE("Bessel estimates of the local analysis") {
  // I0(t) <= e^{t^2/4}, I0(t) <= e^t, and |h(t)| <= log(10 pi t) for t >= 1.
  for (double t = 0.05; t < 200.0; t *= 1.3) {
    CHECK(log_bessel_i0(t) <= t * t / 4.0 + 1e-15);
    CHECK(log_bessel_i0(t) <= t);
    if (t >= 1.0) {
      CHECK(bessel_h(t) <= 0.0);
      CHECK(std::abs(bessel_h(t)) <= std::log(10.0 * std::numbers::pi * t));
    } else {
      CHECK(bessel_h(t) == doctest::Approx(log_bessel_i0(t)));
    }
  }
  CHECK(bessel_h(1.0) == doctest::Approx(std::log(bessel_i0(1.0)) - 1.0).epsilon(1e-15));
}

TEST_CASE("digamma at rational points") {
  const double g = std::numbers::egamma;
  const double pi = std::numbers::pi;
  CHECK(digamma(1.0) == doctest::Approx(-g).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-g - 2 * std::log(2.0)).epsilon(1e-14));
  CHECK(digamma(1.0 / 3) == doctest::Approx(-g - pi / (2 * std::sqrt(3.0)) - 1.5 * std::log(3.0)).epsilon(1e-14));
  CHECK(digamma(0.25) == doctest::Approx(-g - pi / 2 - 3 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(1.5), DomainError);
}

TEST_CASE("digamma reflection and recurrence") {
  for (double x = 0.013; x < 0.99; x += 0.0371) {
    const double lhs = digamma(1.0 - x) - digamma(x);
    const double rhs = std::numbers::pi / std::tan(std::numbers::pi * x);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    // psi(x) = psi(1 + x) - 1/x, psi(1 + x) = -gamma + sum_k x/(k(k + x)).
    double series = -std::numbers::egamma;
    for (int k = 1; k < 2'000'000; ++k) series += x / (k * (k + x));
    series += x / 2e6;  // tail of sum x/(k(k+x)) beyond 2e6
    CHECK(digamma(x) == doctest::Approx(series - 1.0 / x).epsilon(1e-11));
  }
}

TEST_CASE("C1 from two independent quadratures") {
  const auto c1 = compute_c1(1e-10);
  const double other = oracle::c1_double_exponential(1e-12);
  CHECK(std::abs(c1.value - other) < 1e-8);
  CHECK(c1.value == doctest::Approx(kC1Fixture).epsilon(1e-12));
  CHECK(c1.error_bound <= 1e-10);
  CHECK_THROWS_AS(compute_c1(1e-12), DomainError);
}

TEST_CASE("C2 value and ordering") {
  const auto c2 = compute_c2(1e-8);
  CHECK(std::abs(c2.value - 0.2937504) <= 5e-7);
  CHECK(c2.value < std::numbers::egamma);
  CHECK(c2.error_bound <= 1e-8);
  // Slow approach of the partial sums from above.
  const double partial = 0.29378935;
  CHECK(partial - c2.value > 0.0);
  CHECK_THROWS_AS(compute_c2(1e-9), DomainError);
}

TEST_CASE("constants bundle is computed once") {
  const auto& a = constants();
  const auto& b = constants();
  CHECK(&a == &b);
  CHECK(a.gamma_euler == std::numbers::egamma);
  CHECK(a.tolerance_achieved <= 1e-8);
}
