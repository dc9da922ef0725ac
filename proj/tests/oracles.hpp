#pragma once
// Slow, independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Legendre symbol by Euler's criterion.
inline int legendre(std::uint64_t a, std::uint64_t q) {
  const std::uint64_t r = powmod(a, (q - 1) / 2, q);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Power series of I0 in long double.
inline long double bessel_i0_taylor(long double t) {
  const long double x = t * t / 4;
  long double term = 1, sum = 1;
  for (int k = 1; k < 500; ++k) {
    term *= x / (static_cast<long double>(k) * k);
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  return sum;
}

// log I0(t) from I0(t) = (1/pi) int_0^pi exp(t cos th) d th, written as
// t + log of the mean of exp(t (cos th - 1)) over the full circle.
inline double log_i0_integral(double t) {
  if (t < 1e-3) {
    const double x = t * t;
    return x / 4 - x * x / 64 + x * x * x / 576;
  }
  if (t > 1e4) {
    const double r = 1.0 / (8.0 * t);
    const double series = 1 + r + 4.5 * r * r + 37.5 * r * r * r + 459.375 * r * r * r * r;
    return t - 0.5 * std::log(2 * std::numbers::pi * t) + std::log(series);
  }
  std::size_t n = 64;
  double prev = 0.0;
  while (true) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      sum += std::exp(t * (std::cos(th) - 1));
    }
    const double mean = sum / static_cast<double>(n);
    // Aliasing error falls like exp(-n^2 / 2t); past the cap only rounding is left.
    if (n > 64 && (std::abs(mean - prev) <= 1e-14 * mean || n > 40 * std::sqrt(t) + 128)) {
      return t + std::log(mean);
    }
    prev = mean;
    n *= 2;
  }
}

// C1 by double-exponential substitutions and plain trapezoid in the new
// variable, halving the step until consecutive sums agree:
// tanh-sinh on [0,1] for log I0(t)/t^2, exp-sinh on [1,inf) for (log I0(t) - t)/t^2.
inline double c1_double_exponential(double tol = 1e-12) {
  const double half_pi = std::numbers::pi / 2;
  auto near = [](double t) { return t < 1e-3 ? 0.25 - t * t / 64 : log_i0_integral(t) / (t * t); };
  auto far = [](double t) { return t > 1e100 ? 0.0 : (log_i0_integral(t) - t) / (t * t); };
  auto tanh_sinh = [&](double h) {
    double sum = 0.0;
    for (int k = -static_cast<int>(6.0 / h); k <= static_cast<int>(6.0 / h); ++k) {
      const double v = k * h;
      const double s = half_pi * std::sinh(v);
      const double w = half_pi * std::cosh(v) / (std::cosh(s) * std::cosh(s));
      // t = (1 + tanh s)/2 maps R onto (0,1); dt = w/2 dv.
      const double t = 0.5 * (1 + std::tanh(s));
      if (t <= 0.0 || t >= 1.0) continue;
      sum += near(t) * 0.5 * w;
    }
    return sum * h;
  };
  auto exp_sinh = [&](double h) {
    double sum = 0.0;
    for (int k = -static_cast<int>(6.0 / h); k <= static_cast<int>(6.0 / h); ++k) {
      const double v = k * h;
      const double e = std::exp(half_pi * std::sinh(v));
      const double t = 1 + e;
      if (!std::isfinite(t) || e < 1e-300) continue;
      sum += far(t) * e * half_pi * std::cosh(v);
    }
    return sum * h;
  };
  double h = 0.5;
  double prev = tanh_sinh(h) + exp_sinh(h);
  while (true) {
    h /= 2;
    const double cur = tanh_sinh(h) + exp_sinh(h);
    if (std::abs(cur - prev) <= tol || h < 1.0 / 512) return cur;
    prev = cur;
  }
}

// L(1, chi) by partial sums over whole periods N = M q, extrapolated in 1/M.
inline cplx dirichlet_l1(const std::function<cplx(std::uint64_t)>& chi, std::uint64_t q) {
  auto partial = [&](std::uint64_t m) {
    cplx s = 0.0;
    for (std::uint64_t n = m * q; n >= 1; --n) s += chi(n % q) / static_cast<double>(n);
    return s;
  };
  // Richardson on M, 2M, 4M, 8M for an error expansion in powers of 1/M.
  std::vector<cplx> t;
  for (std::uint64_t m = 2000; m <= 16000; m *= 2) t.push_back(partial(m));
  for (std::size_t level = 1; level < t.size(); ++level) {
    const double f = std::pow(2.0, static_cast<double>(level));
    for (std::size_t i = t.size() - 1; i >= level; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1);
  }
  return t.back();
}

// d_z(n) from the recurrence d_z(n) log n = z sum_{m | n, m > 1} Lambda(m) d_z(n/m).
inline std::vector<cplx> divisor_table(cplx z, std::uint64_t n_max) {
  std::vector<double> lambda(n_max + 1, 0.0);
  for (std::uint64_t p = 2; p <= n_max; ++p) {
    if (!is_prime(p)) continue;
    for (std::uint64_t pk = p; pk <= n_max; pk *= p) lambda[pk] = std::log(static_cast<double>(p));
  }
  std::vector<cplx> d(n_max + 1, 0.0);
  d[1] = 1.0;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    cplx s = 0.0;
    for (std::uint64_t m = 2; m <= n; ++m) {
      if (n % m == 0 && lambda[m] != 0.0) s += lambda[m] * d[n / m];
    }
    d[n] = z * s / std::log(static_cast<double>(n));
  }
  return d;
}

// Maximum of f on [a, b]: coarse grid, then golden-section around the best node.
inline std::pair<double, double> maximize(const std::function<double(double)>& f, double a, double b,
                                          int grid = 4096) {
  double best_x = a, best = f(a);
  for (int i = 1; i <= grid; ++i) {
    const double x = a + (b - a) * i / grid;
    const double v = f(x);
    if (v > best) best = v, best_x = x;
  }
  double lo = std::max(a, best_x - (b - a) / grid), hi = std::min(b, best_x + (b - a) / grid);
  const double r = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1, x1 = x2, f1 = f2, x2 = lo + r * (hi - lo), f2 = f(x2);
    } else {
      hi = x2, x2 = x1, f2 = f1, x1 = hi - r * (hi - lo), f1 = f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace oracle
