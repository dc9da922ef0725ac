#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace argl {

// All primes up to a limit, in increasing order. Immutable once built.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  // pi(x) for x <= limit.
  std::size_t count_up_to(double x) const;
  bool contains(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

PrimeSieve primes_up_to(std::uint64_t limit);

// Process-wide sieve covering at least `min_limit`; grows on demand.
std::shared_ptr<const PrimeSieve> shared_sieve(std::uint64_t min_limit);

// Sum of 1/p over p <= x.
double reciprocal_prime_sum(double x);

// Sum of arctan(1/sqrt(p^2-1)) over p <= x. Note arctan(1/sqrt(p^2-1)) = arcsin(1/p).
double arctan_prime_sum(double x);

bool is_prime(std::uint64_t n);

// Prime factorization by trial division, n <= 1e12.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

struct TailEstimate {
  double value = 0.0;
  double error_bound = 0.0;
};

// Estimate of sum_{p > cutoff} p^{-alpha} for alpha > 1, from the
// logarithmic-integral density with the exact pi(cutoff) boundary term.
// The error bound uses Schoenfeld's |pi(t) - li(t)| < sqrt(t) log t / (8 pi),
// valid for t >= 2657 under RH; cutoff must be >= 2657 and <= sieve limit.
TailEstimate prime_power_tail(const PrimeSieve& sieve, std::uint64_t cutoff, double alpha);

}  // namespace argl
