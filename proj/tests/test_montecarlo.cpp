#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nphase/errors.hpp"
#include "nphase/montecarlo.hpp"
#include "nphase/rng.hpp"
#include "nphase/sensitivity.hpp"

using nphase::FringeParams;
using nphase::TrialConfig;

namespace {

constexpr double kPi = std::numbers::pi;

TrialConfig experiment_config(FringeParams params, double true_phase, std::int64_t k,
                              std::int64_t repeats, std::uint64_t seed) {
  TrialConfig config;
  config.params = params;
  config.true_phase = true_phase;
  config.trials_per_experiment = k;
  config.experiment_repeats = repeats;
  config.rng_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("binomial sampler hits the analytic mean and variance on both paths") {
  // Large k*p exercises the rejection sampler, small k*p the inversion path.
  struct Case {
    std::int64_t k;
    double p;
  };
  for (const Case c : {Case{1000000, 0.3}, Case{1000000, 0.75}, Case{200, 0.02}, Case{50, 0.5}}) {
    std::mt19937_64 gen = nphase::make_stream(1234, 0);
    const int draws = 4000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double x = static_cast<double>(nphase::sample_binomial(gen, c.k, c.p));
      REQUIRE(x >= 0.0);
      REQUIRE(x <= static_cast<double>(c.k));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / draws;
    const double variance = sq / draws - mean * mean;
    const double expected_mean = static_cast<double>(c.k) * c.p;
    const double expected_var = static_cast<double>(c.k) * c.p * (1.0 - c.p);
    // 5 sigma bands on the empirical moments.
    CHECK(std::abs(mean - expected_mean) <= 5.0 * std::sqrt(expected_var / draws));
    CHECK(std::abs(variance - expected_var) <= 5.0 * expected_var * std::sqrt(2.0 / draws));
  }
}

TEST_CASE("binomial sampler degenerate inputs") {
  std::mt19937_64 gen = nphase::make_stream(5, 0);
  CHECK(nphase::sample_binomial(gen, 100, 0.0) == 0);
  CHECK(nphase::sample_binomial(gen, 100, 1.0) == 100);
  CHECK(nphase::sample_binomial(gen, 0, 0.5) == 0);
  CHECK_THROWS_AS(nphase::sample_binomial(gen, -1, 0.5), nphase::validation_error);
  CHECK_THROWS_AS(nphase::sample_binomial(gen, 10, 1.5), nphase::validation_error);
  CHECK_THROWS_AS(nphase::sample_binomial(gen, 10, std::nan("")), nphase::validation_error);
}

TEST_CASE("stream seeding is stable and decorrelated") {
  CHECK(nphase::stream_seed(42, 0) == nphase::stream_seed(42, 0));
  CHECK(nphase::stream_seed(42, 0) != nphase::stream_seed(42, 1));
  CHECK(nphase::stream_seed(42, 0) != nphase::stream_seed(43, 0));
  auto a = nphase::make_stream(42, 3);
  auto b = nphase::make_stream(42, 3);
  for (int i = 0; i < 16; ++i) {
    CHECK(a() == b());
  }
}

TEST_CASE("trial counts converge to k p with binomial variance") {
  // The +/-5% band on the sample variance is sub-sigma at R = 200, so this
  // only holds as a frozen-seed regression value, not for arbitrary seeds.
  const auto config = experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 1000000, 200, 101);
  const auto report = nphase::run_experiments(config);
  const double k = 1e6;
  CHECK(std::abs(report.mean_count / k - 0.5) <= 0.002);
  CHECK(std::abs(report.count_variance / k - 0.25) <= 0.05 * 0.25);
}

TEST_CASE("empirical phase error tracks the analytic prediction") {
  const auto config = experiment_config({4, 0.75, 0.82, 0.15}, 0.002, 1000000, 500, 42);
  const auto report = nphase::run_experiments(config);
  CHECK(report.ratio >= 0.95);
  CHECK(report.ratio <= 1.05);
  CHECK(report.analytic_phase_error ==
        doctest::Approx(std::sqrt(nphase::phase_error_squared(config.params, 1000000).value))
            .epsilon(1e-14));
}

TEST_CASE("reports are byte-identical for a fixed config and policy-independent") {
  const auto config = experiment_config({4, 0.75, 0.82, 0.15}, 0.002, 100000, 64, 987654321);
  const auto a = nphase::run_experiments(config, nphase::Exec::Parallel);
  const auto b = nphase::run_experiments(config, nphase::Exec::Parallel);
  const auto c = nphase::run_experiments(config, nphase::Exec::Serial);
  CHECK(a.counts == b.counts);
  CHECK(a.counts == c.counts);
  CHECK(a.phase_estimates == b.phase_estimates);
  CHECK(a.phase_estimates == c.phase_estimates);
  CHECK(a.mean_count == b.mean_count);
  CHECK(a.count_variance == c.count_variance);
  CHECK(a.empirical_phase_error == c.empirical_phase_error);

  const auto reseeded = nphase::run_experiments(
      experiment_config({4, 0.75, 0.82, 0.15}, 0.002, 100000, 64, 5), nphase::Exec::Parallel);
  CHECK(reseeded.counts != a.counts);
}

TEST_CASE("phase estimator is exact on noiseless counts") {
  const auto config = experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 1000000, 10, 1);
  // p(0) = 1/2, slope = 2.
  CHECK(nphase::estimate_phase(500000, config) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(nphase::estimate_phase(520000, config) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_THROWS_AS(nphase::estimate_phase(-1, config), nphase::validation_error);
  CHECK_THROWS_AS(nphase::estimate_phase(1000001, config), nphase::validation_error);
}

TEST_CASE("estimator is unbiased for small true phases") {
  SUBCASE("spec configuration") {
    const auto config = experiment_config({4, 0.75, 0.82, 0.15}, 0.005, 1000000, 500, 42);
    const auto report = nphase::run_experiments(config);
    double mean = 0.0;
    for (const double est : report.phase_estimates) {
      mean += est;
    }
    mean /= static_cast<double>(report.phase_estimates.size());
    const double standard_error = report.empirical_phase_error / std::sqrt(500.0);
    CHECK(std::abs(mean - 0.005) <= 3.0 * standard_error);
  }
  SUBCASE("phase grid around a curvature-free bias") {
    for (const double phi : {-0.01, -0.005, 0.0, 0.005, 0.01}) {
      const auto config = experiment_config({4, 0.75, 0.82, 0.0}, phi, 1000000, 500, 77);
      const auto report = nphase::run_experiments(config);
      double mean = 0.0;
      for (const double est : report.phase_estimates) {
        mean += est;
      }
      mean /= static_cast<double>(report.phase_estimates.size());
      const double standard_error = report.empirical_phase_error / std::sqrt(500.0);
      CHECK(std::abs(mean - phi) <= 3.0 * standard_error);
    }
  }
}

TEST_CASE("error ratio stays near 1 across a seeded parameter sweep") {
  std::mt19937_64 gen = nphase::make_stream(20250810, 0);
  std::uniform_real_distribution<double> eta_dist(0.2, 1.0);
  std::uniform_real_distribution<double> vis_dist(0.1, 0.95);
  std::uniform_real_distribution<double> bias_dist(-kPi, kPi);
  std::uniform_int_distribution<int> n_dist(1, 6);

  int accepted = 0;
  int outliers = 0;
  std::uint64_t seed = 0;
  while (accepted < 100) {
    const FringeParams params{n_dist(gen), eta_dist(gen), vis_dist(gen), bias_dist(gen)};
    const double p = nphase::detection_probability(params, 0.0);
    const double slope = nphase::probability_slope(params, 0.0);
    // Guard bands: binomial fluctuations and estimator nonlinearity blow up
    // when p touches {0,1} or the slope dies.
    if (p < 1e-3 || p > 1.0 - 1e-3 || std::abs(slope) < 1e-3) {
      continue;
    }
    ++accepted;
    const auto report =
        nphase::run_experiments(experiment_config(params, 0.0, 1000000, 500, 1000 + seed++));
    if (report.ratio < 0.9 || report.ratio > 1.1) {
      ++outliers;
    }
  }
  CHECK(outliers <= 5);
}

TEST_CASE("empirical sensitivity") {
  SUBCASE("equals S on a synthetic perfect-agreement report") {
    const auto config = experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 1000000, 2, 3);
    nphase::TrialReport synthetic;
    synthetic.empirical_phase_error = std::sqrt(nphase::phase_error_squared(config.params, 1000000).value);
    CHECK(nphase::sensitivity_from_trials(synthetic, config) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("reaches S_M = 1.30 at the optimal bias") {
    const auto opt = nphase::optimal_bias({4, 0.75, 0.82, 0.0});
    const auto config = experiment_config({4, 0.75, 0.82, opt.bias}, 0.0, 1000000, 500, 42);
    const auto report = nphase::run_experiments(config);
    CHECK(nphase::sensitivity_from_trials(report, config) == doctest::Approx(1.30).epsilon(0.04));
  }
  SUBCASE("stays below 1 for V = 0.4 at eta = 1") {
    const auto config = experiment_config({4, 1.0, 0.4, 0.0}, 0.0, 1000000, 500, 42);
    const auto report = nphase::run_experiments(config);
    const double s = nphase::sensitivity_from_trials(report, config);
    CHECK(std::abs(s - 0.8) <= 0.05);
  }
  SUBCASE("never exceeds the Heisenberg limit beyond 3 standard errors") {
    const auto config = experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 1000000, 500, 11);
    const auto report = nphase::run_experiments(config);
    const double s = nphase::sensitivity_from_trials(report, config);
    const double standard_error = s / std::sqrt(2.0 * 499.0);
    CHECK(s <= 2.0 + 3.0 * standard_error);
  }
  SUBCASE("rejects a zero empirical error") {
    const auto config = experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 10, 2, 3);
    nphase::TrialReport flat;
    flat.empirical_phase_error = 0.0;
    CHECK_THROWS_AS(nphase::sensitivity_from_trials(flat, config), nphase::validation_error);
  }
}

TEST_CASE("degenerate configurations are rejected") {
  // p(true_phase) = 0 exactly: V = 1 fringe minimum.
  CHECK_THROWS_AS(nphase::run_experiments(experiment_config({4, 0.75, 1.0, -kPi / 8.0}, 0.0, 100, 10, 1)),
                  nphase::validation_error);
  // p = 1 exactly.
  CHECK_THROWS_AS(nphase::run_experiments(experiment_config({1, 1.0, 1.0, kPi / 2.0}, 0.0, 100, 10, 1)),
                  nphase::validation_error);
  // Zero slope at the bias: no local information.
  CHECK_THROWS_WITH_AS(nphase::run_experiments(experiment_config({4, 1.0, 0.5, kPi / 8.0}, 0.0, 100, 10, 1)),
                       "no local information: fringe slope vanishes at the bias",
                       nphase::validation_error);
  CHECK_THROWS_AS(nphase::estimate_phase(1, experiment_config({4, 1.0, 0.5, kPi / 8.0}, 0.0, 100, 10, 1)),
                  nphase::validation_error);
  // Invalid counts.
  CHECK_THROWS_AS(nphase::run_experiments(experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 0, 10, 1)),
                  nphase::validation_error);
  CHECK_THROWS_AS(nphase::run_experiments(experiment_config({4, 1.0, 1.0, 0.0}, 0.0, 100, 0, 1)),
                  nphase::validation_error);
}
