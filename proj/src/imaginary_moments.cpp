#include "argl/imaginary_moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "argl/divisor_series.hpp"
#include "argl/errors.hpp"
#include "argl/primes.hpp"
#include "argl/quadrature.hpp"
#include "argl/special_functions.hpp"
#include "argl/summation.hpp"

namespace argl {

namespace {

void check_args(std::uint64_t p, double s) {
  if (p < 2) throw DomainError("g_s requires a prime p");
  if (!(s > 0.0)) throw DomainError("g_s requires s > 0");
}

}  // namespace

double log_g_s(std::uint64_t p, double s, double theta) {
  check_args(p, s);
  if (!(std::abs(theta) <= std::numbers::pi + 1e-12)) throw DomainError("theta must lie in [-pi, pi]");
  // Im(-log(1 - e^{i theta}/p)) = atan2(sin theta, p - cos theta).
  return s * std::atan2(std::sin(theta), static_cast<double>(p) - std::cos(theta));
}

double g_s(std::uint64_t p, double s, double theta) { return std::exp(log_g_s(p, s, theta)); }

GExtremes g_extremes(std::uint64_t p, double s) {
  check_args(p, s);
  const double pd = static_cast<double>(p);
  const double log_max = s * std::atan(1.0 / std::sqrt(pd * pd - 1.0));
  return {p, s, std::acos(1.0 / pd), std::exp(log_max), std::exp(-log_max), log_max};
}

LocalMoment log_e_p(double s, std::uint64_t p, double tol) {
  check_args(p, s);
  const double pd = static_cast<double>(p);
  const double peak = s * std::atan(1.0 / std::sqrt(pd * pd - 1.0));
  // The peak at theta_p narrows as s grows; far from it (p >> s) the
  // integrand is nearly constant and a handful of nodes suffice.
  const std::size_t n0 = pd <= 20.0 * s ? 256 : 16;
  auto integrand = [&](double theta) {
    return std::exp(s * std::atan2(std::sin(theta), pd - std::cos(theta)) - peak);
  };
  const auto q = periodic_mean(integrand, n0, tol, true);
  return {peak + std::log(q.value), q.error_estimate / q.value, q.evaluations};
}

double e_p(double s, std::uint64_t p, double tol) {
  const auto m = log_e_p(s, p, tol);
  if (m.log_value > 700.0) throw OverflowError("E_p(s) overflows; use log_e_p");
  return std::exp(m.log_value);
}

ImaginaryMomentEval exact_imaginary_moment(double s, double tol, const ImaginaryMomentOptions& options) {
  if (!(s >= 1.0 && s <= 1e4)) throw DomainError("exact_imaginary_moment requires s in [1, 1e4]");
  if (!(tol > 0.0)) throw DomainError("exact_imaginary_moment requires tol > 0");
  auto cutoff = static_cast<std::uint64_t>(std::max(std::ceil(2.0 * s * s), 1e4));
  if (cutoff > options.max_cutoff) throw ResourceError("s too large for the configured prime cap");

  std::vector<double> logs;
  std::vector<double> errs;
  auto work = [&](std::span<const std::uint32_t> primes, std::size_t offset, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto m = log_e_p(s, primes[i], 1e-13);
      logs[offset + i] = m.log_value;
      errs[offset + i] = m.error_estimate;
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  while (true) {
    const auto sieve = shared_sieve(cutoff);
    const std::size_t done = logs.size();
    const std::size_t count = sieve->count_up_to(static_cast<double>(cutoff));
    const auto fresh = sieve->primes().subspan(done, count - done);
    logs.resize(count);
    errs.resize(count);
    if (threads == 1) {
      work(fresh, done, 0, fresh.size());
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(work, fresh, done, fresh.size() * t / threads, fresh.size() * (t + 1) / threads);
      }
    }

    // Summed in prime order so the result does not depend on the thread count.
    CompensatedSum total;
    double quad_error = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      total.add(logs[i]);
      quad_error += errs[i];
    }
    // E_p(s) is the local factor at z1 = s/(2i), z2 = -s/(2i): z1 z2 = s^2/4.
    const auto tail = euler_log_tail(*sieve, cutoff, cplx(0.25 * s * s, 0.0), 0.5 * s, 0.5 * s, 1.0);
    total.add(tail.value.real());
    const ImaginaryMomentEval out{s, cutoff, total.value(), tail.error_bound, quad_error};
    const double err = out.tail_bound + out.quadrature_error;
    if (err <= tol) return out;
    if (cutoff >= options.max_cutoff) throw AccuracyError("imaginary moment tolerance not reached", err);
    cutoff = std::min(options.max_cutoff, cutoff * 4);
  }
}

double asymptotic_imaginary_moment(double s) {
  if (!(s >= 3.0)) throw DomainError("asymptotic_imaginary_moment requires s >= 3");
  const auto& k = constants();
  const double ls = std::log(s);
  return s * std::log(ls) + k.c2 * s + k.c1 * s / ls;
}

}  // namespace argl
