#include "argl/divisor_series.hpp"

#include <algorithm>
#include <cmath>

#include "argl/errors.hpp"
#include "argl/quadrature.hpp"
#include "argl/summation.hpp"

namespace argl {

ComplexOrder::ComplexOrder(cplx z, double max_modulus) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("divisor order must be finite");
  if (std::abs(z) > max_modulus) throw DomainError("divisor order exceeds the configured maximum modulus");
}

cplx divisor_coeff_prime_power(cplx z, int a) {
  cplx c(1.0, 0.0);
  for (int j = 1; j <= a; ++j) c *= (z + static_cast<double>(j - 1)) / static_cast<double>(j);
  return c;
}

cplx divisor_coeff(const ComplexOrder& z, std::uint64_t n) {
  if (n == 0) throw DomainError("divisor_coeff requires n >= 1");
  cplx out(1.0, 0.0);
  for (const auto& [p, a] : factorize(n)) out *= divisor_coeff_prime_power(z.value(), a);
  return out;
}

bool series_applicable(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p, double sigma) {
  return std::pow(static_cast<double>(p), 2.0 * sigma) > 2.0 * std::max(z1.modulus(), z2.modulus());
}

LocalFactorEval local_factor_series(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p, double sigma,
                                    double tol) {
  if (!(sigma > 0.5)) throw DomainError("local factor requires sigma > 1/2");
  if (p < 2) throw DomainError("local factor requires a prime p");
  if (!series_applicable(z1, z2, p, sigma)) {
    throw DomainError("series needs p^{2 sigma} > 2 max(|z1|,|z2|); use local_factor_quadrature");
  }
  const cplx a1 = z1.value();
  const cplx a2 = z2.value();
  const double m1 = z1.modulus();
  const double m2 = z2.modulus();
  const double x = std::pow(static_cast<double>(p), -2.0 * sigma);

  CompensatedComplexSum sum;
  sum.add(1.0);
  cplx term(1.0);
  double major = 1.0;  // d_{|z1|}(p^a) d_{|z2|}(p^a) x^a
  constexpr int kMaxTerms = 1'000'000;
  for (int a = 0; a < kMaxTerms; ++a) {
    const double next = static_cast<double>(a + 1);
    term *= (a1 + static_cast<double>(a)) * (a2 + static_cast<double>(a)) / (next * next) * x;
    major *= (m1 + a) * (m2 + a) / (next * next) * x;
    sum.add(term);
    // Majorant ratio for all later terms.
    const double r1 = std::max(1.0, (m1 + a + 1) / (a + 2));
    const double r2 = std::max(1.0, (m2 + a + 1) / (a + 2));
    const double rho = r1 * r2 * x;
    if (rho < 1.0) {
      const double following = major * (m1 + a + 1) * (m2 + a + 1) / ((a + 2.0) * (a + 2.0)) * x;
      const double tail = following / (1.0 - rho);
      if (tail <= tol) return {p, sigma, sum.value(), tail, static_cast<std::size_t>(a + 2)};
    }
  }
  throw AccuracyError("local factor series did not converge", major);
}

LocalFactorEval local_factor_quadrature(const ComplexOrder& z1, const ComplexOrder& z2, std::uint64_t p,
                                        double sigma, double tol) {
  if (!(sigma > 0.5)) throw DomainError("local factor requires sigma > 1/2");
  if (p < 2) throw DomainError("local factor requires a prime p");
  const cplx a1 = z1.value();
  const cplx a2 = z2.value();
  const double r = std::pow(static_cast<double>(p), -sigma);
  // Re(1 - r e^{i theta}) >= 1 - r > 0, so the principal log is continuous.
  auto integrand = [&](double theta) {
    const cplx log_w = std::log(cplx(1.0 - r * std::cos(theta), -r * std::sin(theta)));
    return std::exp(-a1 * log_w - a2 * std::conj(log_w));
  };
  const auto q = periodic_mean(integrand, 64, tol);
  return {p, sigma, q.value, q.error_estimate, q.evaluations};
}

EulerTail euler_log_tail(const PrimeSieve& sieve, std::uint64_t cutoff, cplx z1z2, double z1_mod, double z2_mod,
                            double sigma) {
  const double B = (1.0 + z1_mod) * (1.0 + z2_mod);
  const double P = static_cast<double>(cutoff);
  if (std::pow(P, 2.0 * sigma) < 4.0 * B) throw DomainError("euler_log_tail cutoff too small for these orders");
  const auto t = prime_power_tail(sieve, cutoff, 2.0 * sigma);
  // |log F_p - z1z2 x| <= 6 (B x)^2 once B x <= 1/4; summed over n > P.
  const double higher = 6.0 * B * B * std::pow(P, 1.0 - 4.0 * sigma) / (4.0 * sigma - 1.0);
  return {z1z2 * t.value, std::abs(z1z2) * t.error_bound + higher};
}

DivisorSumResult global_divisor_sum(const ComplexOrder& z1, const ComplexOrder& z2, double sigma, double tol,
                                    const DivisorSumOptions& options) {
  if (!(sigma > 0.5)) throw DomainError("global_divisor_sum requires sigma > 1/2");
  if (!(tol > 0.0)) throw DomainError("global_divisor_sum requires tol > 0");
  const cplx z1z2 = z1.value() * z2.value();
  const double B = (1.0 + z1.modulus()) * (1.0 + z2.modulus());

  std::uint64_t cutoff = 10'000;
  const double needed = std::ceil(std::pow(4.0 * B, 1.0 / (2.0 * sigma)));
  if (needed > static_cast<double>(cutoff)) cutoff = static_cast<std::uint64_t>(needed);
  if (cutoff > options.max_cutoff) throw ResourceError("divisor orders too large for the configured prime cap");

  CompensatedComplexSum log_sum;
  double local_error = 0.0;  // relative, summed over factors
  std::uint64_t done = 1;
  std::size_t next_index = 0;
  while (true) {
    const auto sieve = shared_sieve(cutoff);
    const auto primes = sieve->primes();
    for (; next_index < primes.size() && primes[next_index] <= cutoff; ++next_index) {
      const std::uint64_t p = primes[next_index];
      LocalFactorEval f;
      if (series_applicable(z1, z2, p, sigma)) {
        f = local_factor_series(z1, z2, p, sigma, 1e-17);
      } else {
        const auto rough = local_factor_quadrature(z1, z2, p, sigma, 1e300);
        f = local_factor_quadrature(z1, z2, p, sigma, 1e-14 * std::max(1e-300, std::abs(rough.value)));
      }
      if (f.value == cplx(0.0)) throw AccuracyError("vanishing local factor", 0.0);
      log_sum.add(std::log(f.value));
      local_error += f.truncation_error / std::abs(f.value) + 4e-16;
    }
    done = cutoff;

    const auto tail = euler_log_tail(*sieve, cutoff, z1z2, z1.modulus(), z2.modulus(), sigma);
    const cplx log_value = log_sum.value() + tail.value;
    const cplx value = std::exp(log_value);
    const double log_error = tail.error_bound + local_error;
    const double error = std::abs(value) * std::expm1(log_error);
    if (error <= tol) return {value, log_value, error, done};
    if (cutoff >= options.max_cutoff) throw AccuracyError("global_divisor_sum hit the prime cutoff cap", error);
    cutoff = std::min(options.max_cutoff, cutoff * 4);
  }
}

}  // namespace argl
