#include "argl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "argl/errors.hpp"
#include "argl/primes.hpp"
#include "argl/special_functions.hpp"
#include "argl/summation.hpp"

namespace argl {

EmpiricalDistribution::EmpiricalDistribution(std::uint64_t q, std::vector<double> args)
    : q_(q), args_(std::move(args)) {
  if (q < 3) throw DomainError("empirical distribution needs an odd prime modulus");
  if (args_.size() != q - 2) throw DomainError("expected one argument per non-principal character");
  std::sort(args_.begin(), args_.end());
}

EmpiricalDistribution::EmpiricalDistribution(const SweepResult& sweep) : q_(sweep.q) {
  args_.reserve(sweep.records.size());
  for (const auto& r : sweep.records) args_.push_back(r.arg);
  std::sort(args_.begin(), args_.end());
}

double psi_q(const EmpiricalDistribution& dist, double tau) {
  const auto args = dist.sorted_args();
  const auto above = args.end() - std::upper_bound(args.begin(), args.end(), tau);
  return static_cast<double>(above) / static_cast<double>(dist.phi_q());
}

double phi_q(const EmpiricalDistribution& dist, double tau) {
  const auto args = dist.sorted_args();
  const auto below = std::lower_bound(args.begin(), args.end(), -tau) - args.begin();
  return static_cast<double>(below) / static_cast<double>(dist.phi_q());
}

double saddle_rhs(double u) {
  const auto& k = constants();
  return std::log(u) + k.c2 + (k.c1 + 1.0) / u;
}

double saddle_u_floor() { return std::max(constants().c1 + 1.5, std::log(10.0)); }

double tau_min() { return saddle_rhs(saddle_u_floor()); }

SaddlePoint solve_saddle(double tau) {
  const double floor = saddle_u_floor();
  if (!(tau >= saddle_rhs(floor))) throw DomainError("tau below tau_min: outside the saddle-point regime");
  const auto& k = constants();
  const double c = k.c1 + 1.0;
  double u = std::max(std::exp(tau - k.c2) - c, floor);
  for (int it = 0; it < 200; ++it) {
    const double f = saddle_rhs(u) - tau;
    if (std::abs(f) <= 1e-12) {
      return {tau, std::exp(u), u, std::abs(f)};
    }
    const double df = 1.0 / u - c / (u * u);
    double next = u - f / df;
    if (!(next > 0.0)) next = 0.5 * u;
    u = next;
  }
  throw AccuracyError("saddle-point Newton iteration did not converge", std::abs(saddle_rhs(u) - tau));
}

double theorem1_exponent(double tau) {
  if (!(tau >= tau_min())) throw DomainError("tau below tau_min: outside the tail-formula regime");
  const auto& k = constants();
  const double x = tau - k.c2;
  return std::exp(std::exp(x) - k.c1 - 1.0 - x);
}

double theorem1_prediction(double tau) { return std::exp(-theorem1_exponent(tau)); }

void validate(const ModelConfig& config) {
  if (config.prime_cutoff < 100) throw DomainError("model prime cutoff must be >= 100");
  if (config.samples < 1000) throw DomainError("model needs at least 1000 samples");
  if (config.exact_cutoff < 2) throw DomainError("exact prime cutoff must be >= 2");
}

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (index * 0xd1b54a32d192ed03ULL));
  mixer();
  return SplitMix64(mixer() ^ index);
}

namespace {

// Variance of Im(-log(1 - X/p)) = sum_n sin(n phi)/(n p^n): Li2(p^-2) / 2.
double term_variance(double p) {
  const double x = 1.0 / (p * p);
  double xn = x;
  double sum = 0.0;
  for (int n = 1; n < 60; ++n) {
    const double t = xn / (static_cast<double>(n) * n);
    sum += t;
    if (t < 1e-18 * sum) break;
    xn *= x;
  }
  return 0.5 * sum;
}

// Im(-log(1 - e^{i phi}/p)) = arctan(sin phi / (p - cos phi)).
double prime_term(double p, double c, double s) {
  const double x = s / (p - c);
  if (p < 50.0) return std::atan(x);
  // |x| <= 1/49: the series error is below x^11/11.
  const double x2 = x * x;
  return x * (1.0 - x2 * (1.0 / 3 - x2 * (1.0 / 5 - x2 * (1.0 / 7 - x2 / 9))));
}

}  // namespace

ModelSampler::ModelSampler(const ModelConfig& config) : config_(config) {
  validate(config);
  const std::uint64_t P = config.prime_cutoff;
  const std::uint64_t exact = std::min(config.exact_cutoff, P);
  constexpr std::uint64_t kTailStart = 1'000'000;
  const auto sieve = shared_sieve(std::max(P, kTailStart));
  CompensatedSum var;
  for (const std::uint64_t p : sieve->primes()) {
    if (p <= exact) {
      primes_.push_back(static_cast<double>(p));
    } else if (p <= P) {
      var.add(term_variance(static_cast<double>(p)));
    } else if (config.tail_mode == TailMode::gaussian_tail && p <= kTailStart) {
      var.add(0.5 / (static_cast<double>(p) * static_cast<double>(p)));
    } else {
      break;
    }
  }
  if (config.tail_mode == TailMode::gaussian_tail) {
    const std::uint64_t from = std::max(P, kTailStart);
    var.add(0.5 * prime_power_tail(*sieve, from, 2.0).value);
  }
  variance_ = var.value();
}

double ModelSampler::sample(SplitMix64& rng) const {
  double sum = 0.0;
  for (const double p : primes_) {
    // Uniform point (u, v) in the unit disc; its doubled angle is uniform on
    // the circle, with cosine (u^2 - v^2)/r^2 and sine 2uv/r^2.
    double u, v, r2;
    do {
      u = 2.0 * rng.uniform() - 1.0;
      v = 2.0 * rng.uniform() - 1.0;
      r2 = u * u + v * v;
    } while (r2 >= 1.0 || r2 == 0.0);
    sum += prime_term(p, (u * u - v * v) / r2, 2.0 * u * v / r2);
  }
  if (variance_ > 0.0) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance_));
    sum += normal(rng);
  }
  return sum;
}

double ModelSampler::sample(std::uint64_t index) const {
  auto rng = SplitMix64::stream(config_.seed, index);
  return sample(rng);
}

double ModelSampler::evaluate(std::span<const double> angles) const {
  if (angles.size() != primes_.size()) throw DomainError("one angle per exact prime expected");
  double sum = 0.0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    sum += prime_term(primes_[i], std::cos(angles[i]), std::sin(angles[i]));
  }
  return sum;
}

double model_sample(const ModelSampler& sampler, SplitMix64& rng) { return sampler.sample(rng); }

namespace {

template <class Body>
void parallel_chunks(std::uint64_t count, unsigned threads, Body body) {
  threads = std::max(1u, threads);
  if (threads == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back(body, t, count * t / threads, count * (t + 1) / threads);
  }
}

}  // namespace

std::vector<double> model_samples(const ModelConfig& config) {
  const ModelSampler sampler(config);
  std::vector<double> out(config.samples);
  parallel_chunks(config.samples, config.threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) out[i] = sampler.sample(i);
  });
  return out;
}

double wilson_halfwidth(std::uint64_t k, std::uint64_t n) {
  constexpr double z = 1.959963984540054;
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(k) / nd;
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / (1.0 + z2 / nd);
}

std::vector<PsiEstimate> model_psi(const ModelConfig& config, std::span<const double> tau_grid) {
  const ModelSampler sampler(config);
  std::vector<double> sorted(tau_grid.begin(), tau_grid.end());
  std::sort(sorted.begin(), sorted.end());
  const unsigned threads = std::max(1u, config.threads);
  // buckets[t][b]: samples with exactly b grid points strictly below them.
  std::vector<std::vector<std::uint64_t>> buckets(threads, std::vector<std::uint64_t>(sorted.size() + 1, 0));
  parallel_chunks(config.samples, threads, [&](unsigned t, std::uint64_t begin, std::uint64_t end) {
    auto& mine = buckets[t];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x = sampler.sample(i);
      ++mine[std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()];
    }
  });
  std::vector<std::uint64_t> merged(sorted.size() + 1, 0);
  for (const auto& b : buckets) {
    for (std::size_t i = 0; i < b.size(); ++i) merged[i] += b[i];
  }
  // exceed[i] = #{x > sorted[i]} = sum of buckets above i.
  std::vector<std::uint64_t> exceed(sorted.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t i = sorted.size(); i-- > 0;) {
    running += merged[i + 1];
    exceed[i] = running;
  }
  std::vector<PsiEstimate> out;
  out.reserve(tau_grid.size());
  for (const double tau : tau_grid) {
    const auto i = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), tau) - sorted.begin());
    const std::uint64_t k = exceed[i];
    out.push_back({tau, static_cast<double>(k) / static_cast<double>(config.samples),
                   wilson_halfwidth(k, config.samples), k, config.samples});
  }
  return out;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS distance of an empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

std::vector<CompareRow> compare_report(const SweepResult& sweep, const ModelConfig& config,
                                       std::span<const double> tau_grid) {
  const EmpiricalDistribution dist(sweep);
  const auto model = model_psi(config, tau_grid);
  const double floor = tau_min();
  std::vector<CompareRow> rows;
  rows.reserve(tau_grid.size());
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    const double tau = tau_grid[i];
    CompareRow row{tau, psi_q(dist, tau), model[i].estimate, model[i].ci_halfwidth};
    if (tau >= floor) {
      row.psi_thm1 = theorem1_prediction(tau);
      row.log_laplace_at_saddle = log_laplace_transform_q(sweep, solve_saddle(tau).s);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CompareRow> compare_report(std::uint64_t q, const ModelConfig& config, std::span<const double> tau_grid,
                                       const SweepOptions& sweep_options) {
  return compare_report(sweep(q, sweep_options), config, tau_grid);
}

}  // namespace argl
