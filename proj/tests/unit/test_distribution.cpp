#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "argl/distribution.hpp"
#include "argl/errors.hpp"
#include "argl/primes.hpp"
#include "argl/special_functions.hpp"

using namespace argl;

TEST_CASE("empirical tail counts") {
  const EmpiricalDistribution d(7, {-0.3, 0.0, 0.3, -0.1, 0.1});
  CHECK(d.sorted_args()[0] == -0.3);
  CHECK(psi_q(d, 0.3) == 0.0);
  CHECK(psi_q(d, 0.0) == doctest::Approx(2.0 / 6));
  CHECK(psi_q(d, 0.1) == doctest::Approx(1.0 / 6));  // strict: 0.1 itself does not count
  CHECK(phi_q(d, 0.1) == doctest::Approx(1.0 / 6));
  CHECK(psi_q(d, -1.0) == doctest::Approx(5.0 / 6));
  CHECK_THROWS_AS(EmpiricalDistribution(7, {0.0}), DomainError);
}

TEST_CASE("empirical distribution of a sweep") {
  const auto s = sweep(1009);
  const EmpiricalDistribution d(s);
  CHECK(psi_q(d, 0.0) == doctest::Approx(1006.0 / (2 * 1008)).epsilon(1e-15));
  CHECK(psi_q(d, s.max_arg) == 0.0);
  for (int i = 0; i < 100; ++i) {
    const double tau = s.max_arg * i / 99.0;
    CHECK(psi_q(d, tau) == phi_q(d, tau));
  }
  // Step sizes are multiples of 1/phi(q).
  const auto args = d.sorted_args();
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    const double below = psi_q(d, std::nextafter(args[i], -HUGE_VAL));
    const double at = psi_q(d, args[i]);
    CHECK(std::abs((below - at) * 1008 - std::round((below - at) * 1008)) < 1e-9);
    CHECK(below > at);
  }
}

TEST_CASE("saddle solver") {
  const auto& k = constants();
  CHECK(tau_min() == doctest::Approx(saddle_rhs(saddle_u_floor())).epsilon(1e-15));
  CHECK(saddle_u_floor() == std::max(k.c1 + 1.5, std::log(10.0)));
  CHECK_THROWS_AS(solve_saddle(tau_min() - 0.01), DomainError);
  double prev_s = 0.0;
  for (double tau = tau_min(); tau <= 6.0; tau += 0.05) {
    const auto sp = solve_saddle(tau);
    CHECK(sp.residual <= 1e-12);
    CHECK(std::abs(saddle_rhs(sp.u) - tau) <= 1e-12);
    CHECK(sp.u > k.c1 + 1);
    CHECK(sp.s > prev_s);
    prev_s = sp.s;
  }
  for (const double s : {10.0, 1e2, 1e3, 1e4}) {
    const auto sp = solve_saddle(saddle_rhs(std::log(s)));
    CHECK(sp.s == doctest::Approx(s).epsilon(1e-10));
  }
  double prev_gap = 1.0;
  for (const double tau : {3.0, 4.0, 5.0}) {
    const double ratio = solve_saddle(tau).s / std::exp(std::exp(tau - k.c2) - k.c1 - 1);
    CHECK(std::abs(ratio - 1) < prev_gap);
    prev_gap = std::abs(ratio - 1);
  }
}

TEST_CASE("tail formula identities") {
  const auto& k = constants();
  double prev = 1.0;
  double prev_exponent = 0.0;
  for (double tau = tau_min(); tau < 4.0; tau += 0.1) {
    const double x = tau - k.c2;
    const double e = theorem1_exponent(tau);
    CHECK(e == doctest::Approx(std::exp(std::exp(x) - k.c1 - 1) / std::exp(x)).epsilon(1e-14));
    CHECK(e == doctest::Approx(std::exp(std::exp(x) - k.c1 - 1 - x)).epsilon(1e-13));
    CHECK(theorem1_prediction(tau) == std::exp(-e));
    // Exponent at tau + log 2 in terms of the exponent at tau.
    const double doubled = theorem1_exponent(tau + std::log(2.0));
    CHECK(doubled == doctest::Approx(e * e * std::exp(k.c1 + 1) * std::exp(x) / 2).epsilon(1e-12));
    CHECK(theorem1_prediction(tau) <= prev);
    CHECK(e > prev_exponent);
    prev = theorem1_prediction(tau);
    prev_exponent = e;
  }
  CHECK_THROWS_AS(theorem1_prediction(0.5), DomainError);
}

TEST_CASE("model configuration") {
  ModelConfig c;
  CHECK_NOTHROW(validate(c));
  c.prime_cutoff = 50;
  CHECK_THROWS_AS(validate(c), DomainError);
  c.prime_cutoff = 1000;
  c.samples = 10;
  CHECK_THROWS_AS(validate(c), DomainError);
}

TEST_CASE("model sampler structure") {
  ModelConfig c;
  c.prime_cutoff = 10000;
  c.exact_cutoff = 10000;
  c.tail_mode = TailMode::truncate;
  const ModelSampler m(c);
  CHECK(m.exact_primes().size() == 1229);
  CHECK(m.aggregated_variance() == 0.0);
  const std::vector<double> zeros(m.exact_primes().size(), 0.0);
  CHECK(m.evaluate(zeros) == 0.0);
  // A single nonzero angle gives that prime's contribution only.
  std::vector<double> one = zeros;
  one[0] = 1.0;
  CHECK(m.evaluate(one) == doctest::Approx(std::atan2(std::sin(1.0), 2.0 - std::cos(1.0))).epsilon(1e-15));

  ModelConfig g = c;
  g.exact_cutoff = 1000;
  g.tail_mode = TailMode::gaussian_tail;
  const ModelSampler mg(g);
  double expected = 0.0;
  const auto sieve = primes_up_to(2'000'000);
  for (const auto p : sieve.primes()) {
    if (p <= 1000) continue;
    const double x = 1.0 / (double(p) * p);
    expected += p <= 10000 ? 0.5 * (x + x * x / 4 + x * x * x / 9) : 0.5 * x;
  }
  CHECK(mg.aggregated_variance() == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("sampling is reproducible and thread independent") {
  ModelConfig c;
  c.prime_cutoff = 1000;
  c.samples = 20000;
  c.seed = 42;
  const auto a = model_samples(c);
  c.threads = 3;
  const auto b = model_samples(c);
  CHECK(a == b);
  const ModelSampler m(c);
  CHECK(m.sample(17) == a[17]);
  c.seed = 43;
  CHECK(model_samples(c) != a);
}

TEST_CASE("model symmetry and moments") {
  ModelConfig c;
  c.samples = 200000;
  c.prime_cutoff = 100000;
  const auto x = model_samples(c);
  const double n = double(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  for (const double v : x) var += (v - mean) * (v - mean);
  var /= n - 1;
  CHECK(std::abs(mean) <= 3 * std::sqrt(var / n));
  const auto est = model_psi(c, std::vector<double>{-10.0, 0.0, 0.3});
  CHECK(est[0].estimate == 1.0);
  CHECK(std::abs(est[1].estimate - 0.5) <= est[1].ci_halfwidth);
  const auto neg = std::count_if(x.begin(), x.end(), [](double v) { return v < -0.3; });
  CHECK(std::abs(neg / n - est[2].estimate) <= 2 * est[2].ci_halfwidth);
  // Var arg L(1,X) = sum_p Li2(p^-2)/2 = 0.2368...
  CHECK(var == doctest::Approx(0.2368).epsilon(0.02));
}

TEST_CASE("nested sample sizes converge") {
  ModelConfig c;
  c.seed = 9;
  const std::vector<double> grid{0.5, 1.0};
  std::vector<std::vector<PsiEstimate>> runs;
  for (const std::uint64_t n : {10000, 100000, 1000000}) {
    c.samples = n;
    runs.push_back(model_psi(c, grid));
  }
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    for (std::size_t t = 0; t < grid.size(); ++t) {
      const double diff = std::abs(runs[i][t].estimate - runs[i + 1][t].estimate);
      CHECK(diff < 4 * (runs[i][t].ci_halfwidth + runs[i + 1][t].ci_halfwidth));
    }
  }
}

TEST_CASE("Wilson interval and KS distance") {
  CHECK(wilson_halfwidth(500, 1000) == doctest::Approx(0.0309).epsilon(5e-3));
  CHECK(wilson_halfwidth(0, 1000) > 0.0);
  const std::vector<double> a{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> b{0.5, 1.5, 2.5, 3.5};
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance(a, b) == doctest::Approx(0.25));
  const std::vector<double> c{10.0, 11.0};
  CHECK(ks_distance(a, c) == 1.0);
}

TEST_CASE("compare report columns") {
  ModelConfig c;
  c.samples = 20000;
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
  const auto rows = compare_report(10007, c, grid);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].psi_q == doctest::Approx(10004.0 / (2 * 10006)).epsilon(1e-15));
  CHECK(std::isnan(rows[0].psi_thm1));
  CHECK(std::isfinite(rows[3].psi_thm1));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].psi_q <= rows[i - 1].psi_q);
    CHECK(rows[i].psi_model <= rows[i - 1].psi_model);
  }
}
