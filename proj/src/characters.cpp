#include "argl/characters.hpp"

#include <cmath>
#include <numbers>

#include "argl/errors.hpp"
#include "argl/primes.hpp"

namespace argl {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t smallest_primitive_root(std::uint64_t q) {
  if (!is_prime(q)) throw DomainError("primitive root requested for a non-prime modulus");
  if (q == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = q - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    factors.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < q; ++g) {
    bool generator = true;
    for (const auto f : factors) {
      if (pow_mod(g, (q - 1) / f, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw DomainError("no primitive root found");  // unreachable for prime q
}

CharacterTable::CharacterTable(std::uint64_t q) : q_(q), g_(0) {
  if (q == 2) throw DomainError("q = 2 has no non-principal characters");
  if (q < 3 || !is_prime(q)) throw DomainError("character modulus must be an odd prime");
  if (q > kMaxModulus) throw ResourceError("character modulus exceeds 1e7");
  g_ = smallest_primitive_root(q);
  const std::uint64_t n = q - 1;
  dlog_.assign(q, 0);
  powers_.resize(n);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    powers_[k] = static_cast<std::uint32_t>(x);
    dlog_[x] = static_cast<std::uint32_t>(k);
    x = x * g_ % q;
  }
  roots_.resize(n);
  roots_[0] = {1.0, 0.0};
  for (std::uint64_t k = 1; 2 * k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    roots_[k] = {std::cos(angle), std::sin(angle)};
    roots_[n - k] = std::conj(roots_[k]);
  }
  roots_[n / 2] = {-1.0, 0.0};  // n is even
}

std::uint32_t CharacterTable::dlog(std::uint64_t a) const {
  const std::uint64_t r = a % q_;
  if (r == 0) throw DomainError("dlog of a multiple of q");
  return dlog_[r];
}

CharacterIndex CharacterTable::conjugate(CharacterIndex j) const {
  const std::uint64_t n = q_ - 1;
  return CharacterIndex((n - j.value() % n) % n);
}

bool CharacterTable::is_real(CharacterIndex j) const {
  const std::uint64_t v = j.value() % (q_ - 1);
  return v == 0 || 2 * v == q_ - 1;
}

CharacterTable build_table(std::uint64_t q) { return CharacterTable(q); }

std::complex<double> char_value(const CharacterTable& table, CharacterIndex j, std::uint64_t n) {
  const std::uint64_t q = table.modulus();
  if (n % q == 0) return {0.0, 0.0};
  const std::uint64_t order = q - 1;
  const auto k = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j.value() % order) * table.dlog(n)) % order);
  return table.roots()[k];
}

}  // namespace argl
