#pragma once

#include <cstdint>

namespace argl {

/// g_s(theta) = exp(s * sum_n sin(n theta)/(n p^n)) = exp(s * Im(-log(1 - e^{i theta}/p))).
double g_s(std::uint64_t p, double s, double theta);

/// log g_s(theta); finite for every s.
double log_g_s(std::uint64_t p, double s, double theta);

struct GExtremes {
  std::uint64_t p = 0;
  double s = 0.0;
  double theta_p = 0.0;  // arccos(1/p), where the maximum sits
  double max_value = 0.0;
  double min_value = 0.0;
  double log_max = 0.0;  // s * arctan(1/sqrt(p^2 - 1))
};

GExtremes g_extremes(std::uint64_t p, double s);

struct LocalMoment {
  double log_value = 0.0;
  double error_estimate = 0.0;  // absolute, on log_value
  std::size_t evaluations = 0;
};

/// log E_p(s), E_p(s) = (1/2pi) int g_s(theta) d theta.
LocalMoment log_e_p(double s, std::uint64_t p, double tol);

/// E_p(s) itself; overflows for large s p-small, where log_e_p should be used.
double e_p(double s, std::uint64_t p, double tol);

struct ImaginaryMomentEval {
  double s = 0.0;
  std::uint64_t cutoff = 0;  // largest prime bound included exactly
  double log_value = 0.0;    // log prod_p E_p(s), tail included
  double tail_bound = 0.0;   // bound on the error from primes above cutoff
  double quadrature_error = 0.0;
};

struct ImaginaryMomentOptions {
  unsigned threads = 1;
  std::uint64_t max_cutoff = 200'000'000;
};

/// log of prod_p E_p(s) for s in [1, 1e4]; primes up to P >= max(2 s^2, 1e4)
/// exactly by quadrature, the remaining primes by the prime-density tail.
/// P is raised until the error bound meets tol.
ImaginaryMomentEval exact_imaginary_moment(double s, double tol, const ImaginaryMomentOptions& options = {});

/// s log log s + C2 s + C1 s / log s, for s >= 3.
double asymptotic_imaginary_moment(double s);

}  // namespace argl
