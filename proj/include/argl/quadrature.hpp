#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "argl/errors.hpp"

namespace argl {

template <class T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

template <class F>
struct SimpsonState {
  F& f;
  int max_depth;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool exhausted = false;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= max_depth) {
      if (depth >= max_depth && std::abs(delta) > 15.0 * tol) exhausted = true;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

// Adaptive Simpson on [a, b]. Intervals are halved until the two-panel and
// one-panel estimates agree; throws AccuracyError if max_depth is hit first.
template <class F>
QuadResult<double> adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  detail::SimpsonState<F> st{f, max_depth};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  st.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double v = st.recurse(a, b, fa, fm, fb, whole, tol, 0);
  if (st.exhausted) throw AccuracyError("adaptive Simpson reached maximum depth", st.error);
  return {v, st.error, st.evaluations};
}

// Mean of a 2*pi-periodic function over [-pi, pi), i.e. (1/2pi) * integral,
// by the trapezoid rule. Node count starts at n0 and doubles (reusing the
// previous nodes) until two successive estimates differ by at most tol, or
// by at most tol * |estimate| when `relative` is set.
template <class F>
auto periodic_mean(F&& f, std::size_t n0, double tol, bool relative = false,
                   std::size_t max_nodes = std::size_t{1} << 22)
    -> QuadResult<decltype(f(0.0))> {
  using T = decltype(f(0.0));
  const double two_pi = 2.0 * std::numbers::pi;
  std::size_t n = n0 < 2 ? 2 : n0;
  T sum{};
  for (std::size_t k = 0; k < n; ++k) sum += f(-std::numbers::pi + two_pi * static_cast<double>(k) / static_cast<double>(n));
  T estimate = sum / static_cast<double>(n);
  std::size_t evals = n;
  while (true) {
    if (2 * n > max_nodes) {
      throw AccuracyError("periodic trapezoid reached node cap", 0.0);
    }
    T mid{};
    for (std::size_t k = 0; k < n; ++k) {
      mid += f(-std::numbers::pi + two_pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
    }
    evals += n;
    sum += mid;
    n *= 2;
    const T refined = sum / static_cast<double>(n);
    const double diff = detail::magnitude(refined - estimate);
    estimate = refined;
    const double limit = relative ? tol * detail::magnitude(estimate) : tol;
    if (diff <= limit) return {estimate, diff, evals};
  }
}

}  // namespace argl
