#include "argl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "argl/errors.hpp"
#include "argl/summation.hpp"

namespace argl {

namespace {

constexpr std::size_t kSegmentBytes = 1 << 16;

// Odd-only segmented sieve of Eratosthenes.
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  if (limit >= (std::uint64_t{1} << 32)) throw ResourceError("sieve limit exceeds 2^32");
  out.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))) + 16);
  out.push_back(2);

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  // Base primes up to sqrt(limit), plain sieve over odd numbers.
  std::vector<char> small((root >> 1) + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i >> 1]) continue;
    base.push_back(i);
    for (std::uint64_t m = i * i; m <= root; m += 2 * i) small[m >> 1] = 0;
  }

  // next[k] is the next odd multiple of base[k] not yet crossed off.
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) next[k] = base[k] * base[k];

  std::vector<char> seg(kSegmentBytes);
  // Segment covers odd numbers lo, lo+2, ..., lo + 2*(kSegmentBytes-1).
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegmentBytes) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + 2 * (kSegmentBytes - 1), limit);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::size_t k = 0; k < base.size(); ++k) {
      const std::uint64_t p = base[k];
      std::uint64_t m = next[k];
      for (; m <= hi; m += 2 * p) seg[(m - lo) >> 1] = 0;
      next[k] = m;
    }
    for (std::uint64_t n = lo; n <= hi; n += 2) {
      if (seg[(n - lo) >> 1]) out.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return out;
}

}  // namespace

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("prime sieve limit must be >= 2");
  primes_ = sieve_primes(limit);
}

std::size_t PrimeSieve::count_up_to(double x) const {
  if (x < 2.0) return 0;
  if (x > static_cast<double>(limit_)) throw DomainError("count_up_to beyond sieve limit");
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

bool PrimeSieve::contains(std::uint64_t n) const {
  if (n > limit_) throw DomainError("contains beyond sieve limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

PrimeSieve primes_up_to(std::uint64_t limit) { return PrimeSieve(limit); }

std::shared_ptr<const PrimeSieve> shared_sieve(std::uint64_t min_limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeSieve> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->limit() < min_limit) {
    std::uint64_t limit = std::max<std::uint64_t>(min_limit, 1 << 20);
    if (cached) limit = std::max(limit, 2 * cached->limit());
    cached = std::make_shared<const PrimeSieve>(limit);
  }
  return cached;
}

namespace {

template <class Term>
double prime_sum(double x, Term term) {
  if (!(x >= 2.0)) throw DomainError("prime sums require x >= 2");
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  const auto sieve = shared_sieve(n);
  CompensatedSum acc;
  for (const std::uint32_t p : sieve->primes()) {
    if (p > n) break;
    acc.add(term(static_cast<double>(p)));
  }
  return acc.value();
}

}  // namespace

double reciprocal_prime_sum(double x) {
  return prime_sum(x, [](double p) { return 1.0 / p; });
}

double arctan_prime_sum(double x) {
  return prime_sum(x, [](double p) { return std::asin(1.0 / p); });
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor 0");
  if (n > 1'000'000'000'000ULL) throw DomainError("factorize limited to n <= 1e12");
  std::vector<std::pair<std::uint64_t, int>> out;
  const auto sieve = shared_sieve(1'000'000);
  for (const std::uint64_t p : sieve->primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

TailEstimate prime_power_tail(const PrimeSieve& sieve, std::uint64_t cutoff, double alpha) {
  if (!(alpha > 1.0)) throw DomainError("prime_power_tail requires alpha > 1");
  if (cutoff < 2657) throw DomainError("prime_power_tail requires cutoff >= 2657");
  const double P = static_cast<double>(cutoff);
  const double logP = std::log(P);
  const double pi_P = static_cast<double>(sieve.count_up_to(P));
  const double li_P = std::expint(logP);
  const double smooth = -std::expint(-(alpha - 1.0) * logP);  // E1((alpha-1) log P)
  const double boundary = std::pow(P, -alpha) * (pi_P - li_P);
  const double beta = alpha - 0.5;
  const double bound =
      alpha / (8.0 * std::numbers::pi) * std::pow(P, -beta) * (logP / beta + 1.0 / (beta * beta));
  return {smooth - boundary, bound};
}

}  // namespace argl
