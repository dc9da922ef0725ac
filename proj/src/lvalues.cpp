#include "argl/lvalues.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "argl/errors.hpp"
#include "argl/primes.hpp"
#include "argl/special_functions.hpp"
#include "argl/summation.hpp"

namespace argl {

namespace {

using cplx = std::complex<double>;

// Sparse weights w[m] = sum of 1/(k p^k) over prime powers p^k <= cutoff
// (p != q) with k ind(p) = m mod (q-1). Then for every j,
//   Im sum chi_j(p)^k/(k p^k) = sum_m w[m] Im(root[j m mod (q-1)]).
struct BranchWeights {
  std::vector<std::uint64_t> index;
  std::vector<double> weight;
};

BranchWeights branch_weights(const CharacterTable& table, std::uint64_t cutoff) {
  const std::uint64_t q = table.modulus();
  const std::uint64_t n = table.order();
  std::vector<std::pair<std::uint64_t, double>> terms;
  const auto sieve = shared_sieve(std::max<std::uint64_t>(cutoff, 2));
  for (const std::uint64_t p : sieve->primes()) {
    if (p > cutoff) break;
    if (p == q) continue;
    const std::uint64_t ind = table.dlog(p);
    std::uint64_t pk = p;
    for (std::uint64_t k = 1; pk <= cutoff; ++k) {
      terms.emplace_back(k * ind % n, 1.0 / (static_cast<double>(k) * static_cast<double>(pk)));
      if (pk > cutoff / p) break;
      pk *= p;
    }
  }
  std::sort(terms.begin(), terms.end());
  BranchWeights out;
  for (const auto& [m, w] : terms) {
    if (!out.index.empty() && out.index.back() == m) {
      out.weight.back() += w;
    } else {
      out.index.push_back(m);
      out.weight.push_back(w);
    }
  }
  return out;
}

double branch_sum(const CharacterTable& table, const BranchWeights& bw, std::uint64_t j) {
  const std::uint64_t n = table.order();
  const auto roots = table.roots();
  CompensatedSum acc;
  for (std::size_t i = 0; i < bw.index.size(); ++i) {
    const auto k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * bw.index[i] % n);
    acc.add(bw.weight[i] * roots[k].imag());
  }
  return acc.value();
}

BranchCheck verify(double arg, double truncated) {
  const double residual = arg - truncated;
  return {arg, std::abs(residual) < kBranchThreshold, residual};
}

// psi(g^k mod q / q) for k = 0 .. q-2: the digamma values in index order.
std::vector<double> digamma_by_index(const CharacterTable& table) {
  const std::uint64_t q = table.modulus();
  std::vector<double> out(table.order());
  for (std::uint64_t k = 0; k < out.size(); ++k) {
    out[k] = digamma(static_cast<double>(table.power(k)) / static_cast<double>(q));
  }
  return out;
}

cplx direct_l_value(const CharacterTable& table, const std::vector<double>& psi, std::uint64_t j) {
  const std::uint64_t n = table.order();
  const auto roots = table.roots();
  CompensatedComplexSum acc;
  std::uint64_t idx = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    acc.add(psi[k] * roots[idx]);
    idx += j;
    if (idx >= n) idx -= n;
  }
  return -acc.value() / static_cast<double>(table.modulus());
}

LValueRecord make_record(const CharacterTable& table, std::uint64_t j, cplx l, double truncated) {
  if (l == cplx(0.0, 0.0)) throw std::logic_error("L(1, chi) evaluated to zero");
  const auto check = verify(std::arg(l), truncated);
  return {table.modulus(), CharacterIndex(j), l, check.arg, check.verified, check.residual};
}

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

// out[j] = sum_k in[k] exp(+2 pi i j k / n).
std::vector<cplx> backward_dft(const std::vector<cplx>& in) {
  const int n = static_cast<int>(in.size());
  auto* buf_in = fftw_alloc_complex(in.size());
  auto* buf_out = fftw_alloc_complex(in.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (int k = 0; k < n; ++k) {
    buf_in[k][0] = in[k].real();
    buf_in[k][1] = in[k].imag();
  }
  fftw_execute(plan);
  std::vector<cplx> out(in.size());
  for (int k = 0; k < n; ++k) out[k] = {buf_out[k][0], buf_out[k][1]};
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf_in);
  fftw_free(buf_out);
  return out;
}

void finalize(SweepResult& result) {
  result.max_arg = -std::numeric_limits<double>::infinity();
  result.min_arg = std::numeric_limits<double>::infinity();
  for (const auto& r : result.records) {
    result.max_arg = std::max(result.max_arg, r.arg);
    result.min_arg = std::min(result.min_arg, r.arg);
  }
}

}  // namespace

cplx l_one(const CharacterTable& table, CharacterIndex j) {
  if (j.value() % table.order() == 0) throw DomainError("L(1, chi) is not defined for the principal character");
  return direct_l_value(table, digamma_by_index(table), j.value() % table.order());
}

BranchCheck arg_l_one(const CharacterTable& table, CharacterIndex j, cplx l_value, std::uint64_t cutoff) {
  if (l_value == cplx(0.0, 0.0)) throw std::logic_error("L(1, chi) = 0 signals a computation error");
  const auto bw = branch_weights(table, cutoff);
  return verify(std::arg(l_value), branch_sum(table, bw, j.value() % table.order()));
}

SweepResult sweep(std::uint64_t q, const SweepOptions& options) {
  if (!options.use_fft && q > options.direct_cap) {
    throw ResourceError("q exceeds the direct-sum cap; use the FFT path");
  }
  return sweep(CharacterTable(q), options);
}

SweepResult sweep(const CharacterTable& table, const SweepOptions& options) {
  const std::uint64_t q = table.modulus();
  const std::uint64_t n = table.order();
  if (!options.use_fft && q > options.direct_cap) {
    throw ResourceError("q exceeds the direct-sum cap; use the FFT path");
  }
  const auto psi = digamma_by_index(table);
  const auto bw = branch_weights(table, options.branch_cutoff);

  SweepResult result;
  result.q = q;
  result.records.resize(n - 1);

  if (options.use_fft) {
    std::vector<cplx> in(psi.begin(), psi.end());
    const auto sums = backward_dft(in);
    std::vector<cplx> dense(n);
    for (std::size_t i = 0; i < bw.index.size(); ++i) dense[bw.index[i]] += bw.weight[i];
    const auto branch = backward_dft(dense);
    for (std::uint64_t j = 1; j < n; ++j) {
      result.records[j - 1] = make_record(table, j, -sums[j] / static_cast<double>(q), branch[j].imag());
    }
  } else {
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t j = begin; j < end; ++j) {
        result.records[j - 1] = make_record(table, j, direct_l_value(table, psi, j), branch_sum(table, bw, j));
      }
    };
    const unsigned threads = std::max(1u, options.threads);
    if (threads == 1) {
      work(1, n);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(work, 1 + (n - 1) * t / threads, 1 + (n - 1) * (t + 1) / threads);
      }
    }
  }
  finalize(result);
  return result;
}

double moment_regime_radius(std::uint64_t q) {
  const double l1 = std::log(static_cast<double>(q));
  if (l1 <= 1.0) return 0.0;
  const double l2 = std::log(l1);
  if (l2 <= 1.0) return 0.0;
  const double l3 = std::log(l2);
  if (l3 <= 1.0) return 0.0;
  const double l4 = std::log(l3);
  return l1 * l4 / (10.0 * l2 * l3);
}

EmpiricalMoment empirical_moment(const SweepResult& sweep, cplx z1, cplx z2) {
  if (std::abs(z1) > 50.0 || std::abs(z2) > 50.0) throw DomainError("empirical moments accept |z| <= 50");
  CompensatedComplexSum acc;
  for (const auto& r : sweep.records) {
    const cplx log_l(std::log(std::abs(r.l_value)), r.arg);
    acc.add(std::exp(z1 * log_l + z2 * std::conj(log_l)));
  }
  const double radius = moment_regime_radius(sweep.q);
  const bool in_regime = std::abs(z1) <= radius && std::abs(z2) <= radius;
  return {acc.value() / static_cast<double>(sweep.q - 1), in_regime, radius};
}

double laplace_transform_q(const SweepResult& sweep, double s) {
  if (!(s >= 0.0)) throw DomainError("Laplace transform requires s >= 0");
  CompensatedSum acc;
  for (const auto& r : sweep.records) acc.add(std::exp(s * r.arg));
  return acc.value() / static_cast<double>(sweep.q - 1);
}

double log_laplace_transform_q(const SweepResult& sweep, double s) {
  if (!(s >= 0.0)) throw DomainError("Laplace transform requires s >= 0");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& r : sweep.records) top = std::max(top, s * r.arg);
  CompensatedSum acc;
  for (const auto& r : sweep.records) acc.add(std::exp(s * r.arg - top));
  return top + std::log(acc.value()) - std::log(static_cast<double>(sweep.q - 1));
}

}  // namespace argl
