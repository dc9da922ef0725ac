#pragma once

#include <complex>
#include <cstdint>

#include "argl/primes.hpp"

namespace argl {

using cplx = std::complex<double>;

// The order z of the generalized divisor function d_z.
class ComplexOrder {
 public:
  static constexpr double kDefaultMaxModulus = 1e4;

  ComplexOrder(cplx z, double max_modulus = kDefaultMaxModulus);
  ComplexOrder(double z) : ComplexOrder(cplx(z, 0.0)) {}

  cplx value() const noexcept { return z_; }
  double modulus() const noexcept { return std::abs(z_); }
  ComplexOrder conj() const { return ComplexOrder(std::conj(z_)); }

 private:
  cplx z_;
};

struct LocalFactorEval {
  std::uint64_t p = 0;
  double sigma = 0.0;
  cplx value;
  double truncation_error = 0.0;
  std::size_t terms_used = 0;  // series terms, or integrand evaluations
};

struct DivisorSumResult {
  cplx value;
  cplx log_value;  // sum of principal logs of the local factors plus tail
  double error_bound = 0.0;  // absolute, on value
  std::uint64_t prime_cutoff = 0;
};

/// d_z(p^a) = z (z+1) ... (z+a-1) / a!
cplx divisor_coeff_prime_power(cplx z, int a);

/// d_z(n), multiplicative extension of the prime-power product form.
cplx divisor_coeff(const ComplexOrder& z, std::uint64_t n);

/// True when the local-factor series decays geometrically at (p, sigma):
/// p^{2 sigma} > 2 max(|z1|, |z2|).
bool series_applicable(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p, double sigma);

/// sum_{a>=0} d_{z1}(p^a) d_{z2}(p^a) p^{-2 sigma a}, with the tail bounded by
/// the majorant d_{|z1|}(p^a) d_{|z2|}(p^a) p^{-2 sigma a}.
LocalFactorEval local_factor_series(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p, double sigma,
                                    double tol);

/// The same factor as (1/2pi) int (1 - e^{i theta}/p^sigma)^{-z1} (1 - e^{-i theta}/p^sigma)^{-z2} d theta,
/// by periodic trapezoid.
LocalFactorEval local_factor_quadrature(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p,
                                        double sigma, double tol);

struct EulerTail {
  cplx value;
  double error_bound = 0.0;
};

/// Estimate of sum_{p > cutoff} log F_p where F_p = 1 + z1z2 p^{-2 sigma} + ...
/// and |d_{zi}(p^a)| <= (1 + |zi|)^a. Requires cutoff^{2 sigma} >= 4 (1+|z1|)(1+|z2|).
EulerTail euler_log_tail(const PrimeSieve& sieve, std::uint64_t cutoff, cplx z1z2, double z1_mod, double z2_mod,
                            double sigma);

struct DivisorSumOptions {
  std::uint64_t max_cutoff = 20'000'000;
};

/// sum_n d_{z1}(n) d_{z2}(n) / n^{2 sigma} as an Euler product over p <= P
/// plus an estimated tail, with P raised until the error bound meets tol.
DivisorSumResult global_divisor_sum(const ComplexOrder& z1, const ComplexOrder& z2, double sigma, double tol,
                                    const DivisorSumOptions& options = {});

}  // namespace argl
