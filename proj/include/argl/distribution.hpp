#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "argl/lvalues.hpp"

namespace argl {

// Sorted arguments of L(1, chi) over the non-principal characters mod q.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::uint64_t q, std::vector<double> args);
  explicit EmpiricalDistribution(const SweepResult& sweep);

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t phi_q() const noexcept { return q_ - 1; }
  std::span<const double> sorted_args() const noexcept { return args_; }

 private:
  std::uint64_t q_;
  std::vector<double> args_;
};

/// Proportion of non-principal characters with arg L(1,chi) > tau (strict).
double psi_q(const EmpiricalDistribution& dist, double tau);
/// Proportion with arg L(1,chi) < -tau.
double phi_q(const EmpiricalDistribution& dist, double tau);

// Saddle point of the Laplace inversion: tau = log log s + C2 + (C1 + 1)/log s.
struct SaddlePoint {
  double tau = 0.0;
  double s = 0.0;
  double u = 0.0;  // log s
  double residual = 0.0;
};

/// Right side of the saddle equation as a function of u = log s.
double saddle_rhs(double u);
/// Smallest admissible u: max(C1 + 1.5, log 10).
double saddle_u_floor();
/// saddle_rhs(saddle_u_floor()).
double tau_min();

SaddlePoint solve_saddle(double tau);

/// exp(e^{tau-C2} - C1 - 1) / e^{tau-C2}, the exponent of the tail formula.
double theorem1_exponent(double tau);
/// exp(-theorem1_exponent(tau)); the main term only.
double theorem1_prediction(double tau);

enum class TailMode { truncate, gaussian_tail };

struct ModelConfig {
  std::uint64_t prime_cutoff = 100'000;  // P
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  TailMode tail_mode = TailMode::gaussian_tail;
  // Primes up to this bound are sampled individually; the independent
  // contributions of primes in (exact_cutoff, P] are drawn as one centered
  // normal with their exact total variance.
  std::uint64_t exact_cutoff = 1'000;
  unsigned threads = 1;
};

void validate(const ModelConfig& config);

// 64-bit splitmix generator; stream i of seed s is independent of the
// order in which streams are consumed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  double uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

// Precomputed model: arg L(1, X) = sum_p Im(-log(1 - X(p)/p)), X(p) uniform on the circle.
class ModelSampler {
 public:
  explicit ModelSampler(const ModelConfig& config);

  const ModelConfig& config() const noexcept { return config_; }
  std::span<const double> exact_primes() const noexcept { return primes_; }
  // Variance of the normal component (aggregated primes plus tail).
  double aggregated_variance() const noexcept { return variance_; }

  /// One draw using the generator's stream.
  double sample(SplitMix64& rng) const;
  /// Draw number `index` of the configured seed.
  double sample(std::uint64_t index) const;
  /// Deterministic probe: the exact-prime part at given angles phi_p.
  double evaluate(std::span<const double> angles) const;

 private:
  ModelConfig config_;
  std::vector<double> primes_;
  double variance_ = 0.0;
};

double model_sample(const ModelSampler& sampler, SplitMix64& rng);

/// All configured samples in index order.
std::vector<double> model_samples(const ModelConfig& config);

struct PsiEstimate {
  double tau = 0.0;
  double estimate = 0.0;
  double ci_halfwidth = 0.0;  // 95% Wilson interval half-width
  std::uint64_t exceed = 0;
  std::uint64_t samples = 0;
};

std::vector<PsiEstimate> model_psi(const ModelConfig& config, std::span<const double> tau_grid);

/// 95% Wilson score half-width for k successes out of n.
double wilson_halfwidth(std::uint64_t k, std::uint64_t n);

/// Two-sample Kolmogorov-Smirnov distance of two sorted samples.
double ks_distance(std::span<const double> a, std::span<const double> b);

struct CompareRow {
  double tau = 0.0;
  double psi_q = 0.0;
  double psi_model = 0.0;
  double ci = 0.0;
  double psi_thm1 = std::numeric_limits<double>::quiet_NaN();  // NaN below tau_min
  double log_laplace_at_saddle = std::numeric_limits<double>::quiet_NaN();
};

std::vector<CompareRow> compare_report(const SweepResult& sweep, const ModelConfig& config,
                                       std::span<const double> tau_grid);
std::vector<CompareRow> compare_report(std::uint64_t q, const ModelConfig& config, std::span<const double> tau_grid,
                                       const SweepOptions& sweep_options = {});

}  // namespace argl
