#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vwergm/error.hpp"
#include "vwergm/exact.hpp"
#include "vwergm/sampler.hpp"

using namespace vwergm;

TEST_CASE("conditional probability is the heat-bath law") {
  const ModelSpec s(6, 0.35, {{2, 0.9}, {3, -1.4}}, 0.1);
  for (std::uint64_t mask : {0ULL, 5ULL, 22ULL, 63ULL}) {
    const auto c = BinaryConfig::from_mask(6, mask);
    for (int j = 0; j < 6; ++j) {
      auto x = c.to_weights().vec();
      x[static_cast<std::size_t>(j)] = 1;
      const double f1 = oracle::hamiltonian(s, x);
      x[static_cast<std::size_t>(j)] = 0;
      const double f0 = oracle::hamiltonian(s, x);
      CHECK(conditional_probability(s, c, j) == doctest::Approx(1 / (1 + std::exp(f0 - f1))).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(conditional_probability(s, BinaryConfig::from_mask(6, 0), 6), InvalidParameter);
}

TEST_CASE("kernel and single-step paths agree") {
  const ModelSpec s(9, 0.4, {{2, 0.5}, {4, 1.0}});
  const GlauberKernel k(s);
  auto a = initial_state(s, 17);
  auto b = a;
  for (int t = 0; t < 5000; ++t) {
    k.update(a);
    b = glauber_step(s, std::move(b));
  }
  CHECK(a.config == b.config);
  CHECK(a.ones == a.config.ones());
  CHECK(a.sweep_count == 5000 / 9);
  CHECK(a.running_mean == b.running_mean);
  CHECK(k.drift(a.config) < 1e-12);
}

TEST_CASE("initial states") {
  const ModelSpec s(7, 0.5);
  CHECK(initial_state(s, 1, ChainInit::zeros).config.ones() == 0);
  CHECK(initial_state(s, 1, ChainInit::ones).config.ones() == 7);
  CHECK(initial_state(s, 5).config == initial_state(s, 5).config);
}

TEST_CASE("chains are reproducible and unbiased on a small model") {
  const ModelSpec s(6, 0.4, {{2, 0.7}});
  ChainOptions o;
  o.seed = 99;
  o.burn_in = 100;
  o.samples = 40000;
  const auto r1 = run_chain(s, o);
  const auto r2 = run_chain(s, o);
  CHECK(r1.samples == r2.samples);
  CHECK(r1.diagnostics.mean == r2.diagnostics.mean);
  CHECK(r1.diagnostics.sweeps == o.burn_in + o.samples);
  CHECK(r1.diagnostics.updates == 6 * (o.burn_in + o.samples));
  CHECK(r1.diagnostics.rng_algorithm == "mt19937_64");

  const auto ex = exact_summary(s);
  for (int i = 0; i < 6; ++i) {
    const double se = r1.diagnostics.std_error[static_cast<std::size_t>(i)];
    CHECK(se > 0);
    CHECK(std::abs(r1.diagnostics.mean[static_cast<std::size_t>(i)] - ex.mean[static_cast<std::size_t>(i)]) < 5 * se);
  }
  REQUIRE(r1.diagnostics.autocorrelation.size() == 3);
  CHECK(r1.diagnostics.autocorrelation[0].first == 1);
  CHECK(std::abs(r1.diagnostics.autocorrelation[2].second) < 0.1);
  CHECK(r1.diagnostics.split_discrepancy < 5);

  o.samples = 0;
  CHECK_THROWS_AS(run_chain(s, o), InvalidParameter);
}

TEST_CASE("detailed balance on n = 4") {
  const ModelSpec s(4, 0.3, {{2, 1.1}, {3, -0.9}, {4, 2.0}});
  std::vector<double> w(16);
  for (std::uint64_t m = 0; m < 16; ++m) w[m] = std::exp(oracle::hamiltonian(s, BinaryConfig::from_mask(4, m).to_weights().vec()));
  double z = 0;
  for (double v : w) z += v;
  auto step = [&](std::uint64_t from, int j) {
    const auto c = BinaryConfig::from_mask(4, from);
    const double p1 = conditional_probability(s, c, j);
    return 0.25 * (((from >> j) & 1U) ? 1 - p1 : p1);
  };
  double worst = 0;
  for (std::uint64_t m = 0; m < 16; ++m)
    for (int j = 0; j < 4; ++j) {
      const std::uint64_t f = m ^ (1ULL << j);
      worst = std::max(worst, std::abs(w[m] / z * step(m, j) - w[f] / z * step(f, j)));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("split R-hat flags a bistable model") {
  ChainOptions o;
  o.burn_in = 50;
  o.samples = 400;
  o.init = ChainInit::dispersed;
  const auto stuck = run_chains(ModelSpec(150, 0.05, {{2, 2.0}, {3, 2.0}}), o, 4, 2);
  CHECK(stuck.chains.size() == 4);
  CHECK(stuck.slow_mixing);
  CHECK(stuck.split_rhat > 1.1);

  const auto easy = run_chains(ModelSpec(30, 0.4, {{2, 0.3}}), o, 4);
  CHECK_FALSE(easy.slow_mixing);
  CHECK(easy.split_rhat < 1.1);

  const auto one = run_chains(ModelSpec(30, 0.4, {{2, 0.3}}), o, 4, 1);
  CHECK(one.split_rhat == easy.split_rhat);
}

TEST_CASE("residual distribution") {
  auto spread = [](int n) {
    const ModelSpec s(n, 0.3, {{2, 0.5}});
    ChainOptions o;
    o.seed = 5;
    o.burn_in = 200;
    o.samples = 400;
    const auto r = run_chain(s, o);
    const auto h = residual_distribution(s, r.samples, 10);
    std::uint64_t total = 0;
    for (auto c : h.counts) total += c;
    CHECK(total == r.samples.size());
    CHECK(h.hi == n);
    CHECK(h.fraction_below_threshold == 1.0);  // threshold exceeds n at desk scale
    return h.stddev_normalized;
  };
  const double s20 = spread(20), s320 = spread(320);
  CHECK(s320 < s20);
  CHECK_THROWS_AS(residual_distribution(ModelSpec(3, 0.5), {}, 10), InvalidParameter);
}
