#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace argl {

// Label j of the character chi_j(a) = exp(2 pi i j ind(a) / (q - 1)).
class CharacterIndex {
 public:
  constexpr explicit CharacterIndex(std::uint64_t j) : j_(j) {}
  constexpr std::uint64_t value() const noexcept { return j_; }
  constexpr bool operator==(const CharacterIndex&) const = default;

 private:
  std::uint64_t j_;
};

// Characters modulo a prime q through a fixed primitive root g.
class CharacterTable {
 public:
  static constexpr std::uint64_t kMaxModulus = 10'000'000;

  explicit CharacterTable(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t order() const noexcept { return q_ - 1; }  // phi(q), also the number of characters
  std::uint64_t primitive_root() const noexcept { return g_; }

  // ind(a) for gcd(a, q) = 1, a taken mod q.
  std::uint32_t dlog(std::uint64_t a) const;
  // g^k mod q.
  std::uint32_t power(std::uint64_t k) const { return powers_[k % (q_ - 1)]; }

  // exp(2 pi i k / (q-1)); entries k and q-1-k are exact conjugates.
  std::span<const std::complex<double>> roots() const noexcept { return roots_; }

  CharacterIndex conjugate(CharacterIndex j) const;
  bool is_real(CharacterIndex j) const;

 private:
  std::uint64_t q_;
  std::uint64_t g_;
  std::vector<std::uint32_t> dlog_;    // indexed by residue, dlog_[0] unused
  std::vector<std::uint32_t> powers_;  // indexed by exponent
  std::vector<std::complex<double>> roots_;
};

CharacterTable build_table(std::uint64_t q);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Smallest primitive root of the prime q.
std::uint64_t smallest_primitive_root(std::uint64_t q);

/// chi_j(n); zero when q divides n.
std::complex<double> char_value(const CharacterTable& table, CharacterIndex j, std::uint64_t n);

}  // namespace argl
