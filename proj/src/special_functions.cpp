#include "argl/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "argl/errors.hpp"
#include "argl/primes.hpp"
#include "argl/quadrature.hpp"
#include "argl/summation.hpp"

namespace argl {

namespace {

constexpr double kSeriesCrossover = 30.0;

// I0(t) - 1 from the power series; accurate for small t where I0 ~ 1.
double i0_series_minus_one(double t) {
  const double x = 0.25 * t * t;
  double term = 1.0;
  double sum = 0.0;
  for (int n = 1; n < 500; ++n) {
    term *= x / (static_cast<double>(n) * n);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// log of S(t) = sum_k a_k t^-k with a_k = ((2k-1)!!)^2 / (k! 8^k), so that
// I0(t) ~ e^t S(t) / sqrt(2 pi t). Summed until terms stop shrinking.
double log_hankel_factor(double t) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double ratio = (2.0 * k + 1) * (2.0 * k + 1) / (8.0 * (k + 1) * t);
    if (ratio >= 1.0) break;
    term *= ratio;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::log(sum);
}

// h(t) + log(2 pi t)/2 for t >= 1; tends to 0 like 1/(8t).
double bessel_h_remainder(double t) {
  if (t > kSeriesCrossover) return log_hankel_factor(t);
  return std::log1p(i0_series_minus_one(t)) - t + 0.5 * std::log(2.0 * std::numbers::pi * t);
}

}  // namespace

double bessel_i0(double t) {
  if (!(t >= 0.0)) throw DomainError("bessel_i0 requires t >= 0");
  if (t > 700.0) throw OverflowError("bessel_i0 overflows for t > 700; use log_bessel_i0");
  if (t <= kSeriesCrossover) return 1.0 + i0_series_minus_one(t);
  return std::exp(t + log_hankel_factor(t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

double log_bessel_i0(double t) {
  if (!(t >= 0.0)) throw DomainError("log_bessel_i0 requires t >= 0");
  if (t <= kSeriesCrossover) return std::log1p(i0_series_minus_one(t));
  return t - 0.5 * std::log(2.0 * std::numbers::pi * t) + log_hankel_factor(t);
}

double bessel_h(double t) {
  if (!(t >= 0.0)) throw DomainError("h requires t >= 0");
  if (t < 1.0) return log_bessel_i0(t);
  if (t > kSeriesCrossover) return -0.5 * std::log(2.0 * std::numbers::pi * t) + log_hankel_factor(t);
  return log_bessel_i0(t) - t;
}

double digamma(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("digamma is provided on (0, 1] only");
  // psi(x) = psi(x + 10) - sum_{k=0}^{9} 1/(x + k); smallest terms first.
  double shift = 0.0;
  for (int k = 9; k >= 0; --k) shift += 1.0 / (x + k);
  const double y = x + 10.0;
  const double r = 1.0 / (y * y);
  // Bernoulli tail: sum B_2k / (2k y^2k), k = 1..7.
  const double tail =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return std::log(y) - 0.5 / y - tail - shift;
}

ConstantEstimate compute_c1(double tol) {
  if (!(tol >= 1e-10)) throw DomainError("compute_c1 requires tol >= 1e-10");
  // [0,1]: log I0(t)/t^2 -> 1/4 at the origin.
  auto near = [](double t) {
    if (t < 1e-4) {
      const double t2 = t * t;
      return 0.25 - t2 / 64.0 + t2 * t2 / 576.0;
    }
    return std::log1p(i0_series_minus_one(t)) / (t * t);
  };
  // [1,inf): h(t) = -log(2 pi t)/2 + remainder(t). The logarithmic part
  // integrates in closed form; the remainder is mapped to u = 1/t in (0,1].
  auto far = [](double u) { return u <= 0.0 ? 0.0 : bessel_h_remainder(1.0 / u); };
  const double half_tol = 0.5 * tol;
  const auto a = adaptive_simpson(near, 0.0, 1.0, half_tol / 10.0);
  const auto b = adaptive_simpson(far, 0.0, 1.0, half_tol / 10.0);
  const double closed = -0.5 * (std::log(2.0 * std::numbers::pi) + 1.0);
  const double err = a.error_estimate + b.error_estimate;
  if (err > tol) throw AccuracyError("C1 quadrature did not reach tolerance", err);
  return {a.value + b.value + closed, err};
}

ConstantEstimate compute_c2(double tol) {
  if (!(tol >= 1e-8)) throw DomainError("compute_c2 requires tol >= 1e-8");
  // C2 = gamma + sum_p (arcsin(1/p) + log(1 - 1/p)), since Mertens' constant
  // is gamma + sum_p (log(1 - 1/p) + 1/p). Terms are -1/(2p^2) - 1/(6p^3) - ...
  constexpr std::uint64_t kCap = 100'000'000;
  std::uint64_t x = 1'000'000;
  while (true) {
    const auto sieve = shared_sieve(x);
    CompensatedSum acc(std::numbers::egamma);
    for (const std::uint32_t p : sieve->primes()) {
      if (p > x) break;
      const double y = 1.0 / p;
      acc.add(std::asin(y) + std::log1p(-y));
    }
    const auto t2 = prime_power_tail(*sieve, x, 2.0);
    const auto t3 = prime_power_tail(*sieve, x, 3.0);
    acc.add(-0.5 * t2.value - t3.value / 6.0);
    const double xd = static_cast<double>(x);
    const double err = 0.5 * t2.error_bound + t3.error_bound / 6.0 + 1.0 / (9.0 * xd * xd * xd);
    if (err <= tol) return {acc.value(), err};
    if (x >= kCap) throw AccuracyError("C2 prime cutoff cap reached", err);
    x *= 4;
  }
}

const ConstantsBundle& constants() {
  static const ConstantsBundle bundle = [] {
    const auto c1 = compute_c1(1e-10);
    const auto c2 = compute_c2(1e-8);
    return ConstantsBundle{c1.value, c2.value, std::numbers::egamma, std::max(c1.error_bound, c2.error_bound)};
  }();
  return bundle;
}

}  // namespace argl
