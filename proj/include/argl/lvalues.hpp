#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "argl/characters.hpp"

namespace argl {

struct LValueRecord {
  std::uint64_t q = 0;
  CharacterIndex j{0};
  std::complex<double> l_value;
  double arg = 0.0;  // principal argument, radians
  bool branch_verified = false;
  double branch_residual = 0.0;  // arg minus the truncated prime-power sum
};

struct SweepResult {
  std::uint64_t q = 0;
  std::vector<LValueRecord> records;  // j = 1 .. q-2, in order
  double max_arg = 0.0;
  double min_arg = 0.0;
};

struct BranchCheck {
  double arg = 0.0;
  bool verified = false;
  double residual = 0.0;
};

inline constexpr std::uint64_t kBranchCutoff = 100'000;
inline constexpr double kBranchThreshold = 0.5;

/// L(1, chi_j) = -(1/q) sum_{a=1}^{q-1} chi_j(a) psi(a/q), j != 0.
std::complex<double> l_one(const CharacterTable& table, CharacterIndex j);

/// Principal argument of L(1, chi_j), cross-checked against
/// Im sum_{p^k <= cutoff} chi_j(p)^k / (k p^k).
BranchCheck arg_l_one(const CharacterTable& table, CharacterIndex j, std::complex<double> l_value,
                      std::uint64_t cutoff = kBranchCutoff);

struct SweepOptions {
  unsigned threads = 1;
  std::uint64_t direct_cap = 200'000;  // largest q for the O(q^2) direct sums
  bool use_fft = false;                // all characters at once by a length-(q-1) DFT
  std::uint64_t branch_cutoff = kBranchCutoff;
};

SweepResult sweep(std::uint64_t q, const SweepOptions& options = {});
SweepResult sweep(const CharacterTable& table, const SweepOptions& options = {});

/// R(q) = log q log_4 q / (10 log_2 q log_3 q); 0 where the iterated logs are not positive.
double moment_regime_radius(std::uint64_t q);

struct EmpiricalMoment {
  std::complex<double> value;
  bool in_regime = false;  // |z1|, |z2| <= R(q)
  double regime_radius = 0.0;
};

/// (1/phi(q)) sum_{chi != chi0} L(1,chi)^{z1} L(1,conj chi)^{z2}, powers taken from (log|L|, arg).
EmpiricalMoment empirical_moment(const SweepResult& sweep, std::complex<double> z1, std::complex<double> z2);

/// (1/phi(q)) sum_{chi != chi0} exp(s arg L(1,chi)), s >= 0.
double laplace_transform_q(const SweepResult& sweep, double s);
double log_laplace_transform_q(const SweepResult& sweep, double s);

}  // namespace argl
