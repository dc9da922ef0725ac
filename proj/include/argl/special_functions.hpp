#pragma once

namespace argl {

/// Modified Bessel function I0(t) for 0 <= t <= 700.
/// Power series up to t = 30, Hankel asymptotic expansion beyond.
double bessel_i0(double t);

/// log I0(t) for any t >= 0, without overflow.
double log_bessel_i0(double t);

/// h(t) = log I0(t) for t < 1, log I0(t) - t for t >= 1.
double bessel_h(double t);

/// Digamma on (0, 1], by upward recurrence to x + n >= 10 and the
/// asymptotic series there.
double digamma(double x);

struct ConstantsBundle {
  double c1 = 0.0;
  double c2 = 0.0;
  double gamma_euler = 0.0;
  double tolerance_achieved = 0.0;
};

struct ConstantEstimate {
  double value = 0.0;
  double error_bound = 0.0;
};

/// C1 = int_0^1 log I0(t) dt/t^2 + int_1^inf (log I0(t) - t) dt/t^2, tol >= 1e-10.
ConstantEstimate compute_c1(double tol);

/// C2 = lim (sum_{p<=x} arctan(1/sqrt(p^2-1)) - log log x), tol >= 1e-8.
ConstantEstimate compute_c2(double tol);

/// Bundle computed once (C1 to 1e-10, C2 to 1e-8) and shared process-wide.
const ConstantsBundle& constants();

}  // namespace argl
