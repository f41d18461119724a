#include "nphase/montecarlo.hpp"

#include <cmath>

#include "nphase/errors.hpp"
#include "nphase/rng.hpp"
#include "nphase/sensitivity.hpp"

namespace nphase {

void TrialConfig::validate() const {
  params.validate();
  if (!std::isfinite(true_phase)) {
    throw validation_error("true_phase must be finite");
  }
  if (trials_per_experiment < 1) {
    throw validation_error("trials_per_experiment must be >= 1");
  }
  if (experiment_repeats < 1) {
    throw validation_error("experiment_repeats must be >= 1");
  }
}

namespace {

struct OperatingPoint {
  double p0;      // detection probability at the bias (phi = 0)
  double slope0;  // dp/dphi at the bias
};

// Rejects configurations whose bias point carries no first-order phase
// information (vanished slope, or V = 0).
OperatingPoint operating_point(const TrialConfig& config) {
  const PhaseError analytic = phase_error_squared(config.params, config.trials_per_experiment);
  if (!analytic.informative) {
    throw validation_error("no local information: fringe slope vanishes at the bias");
  }
  return {detection_probability(config.params, 0.0), probability_slope(config.params, 0.0)};
}

}  // namespace

TrialReport run_experiments(const TrialConfig& config, Exec policy) {
  config.validate();
  const double p_true = detection_probability(config.params, config.true_phase);
  if (p_true <= 0.0 || p_true >= 1.0) {
    throw validation_error(
        "detection probability at the true phase must lie strictly inside (0, 1)");
  }
  const OperatingPoint op = operating_point(config);

  const std::int64_t repeats = config.experiment_repeats;
  const double k = static_cast<double>(config.trials_per_experiment);

  TrialReport report;
  report.counts.assign(static_cast<std::size_t>(repeats), 0);
  // Repeat i always draws from stream i, so the report does not depend on
  // the execution policy or thread count.
  for_each_index(repeats, policy, [&](std::int64_t i) {
    std::mt19937_64 gen = make_stream(config.rng_seed, static_cast<std::uint64_t>(i));
    report.counts[static_cast<std::size_t>(i)] =
        sample_binomial(gen, config.trials_per_experiment, p_true);
  });

  report.phase_estimates.reserve(static_cast<std::size_t>(repeats));
  double count_sum = 0.0;
  for (const std::int64_t count : report.counts) {
    count_sum += static_cast<double>(count);
    report.phase_estimates.push_back((static_cast<double>(count) / k - op.p0) / op.slope0);
  }
  report.mean_count = count_sum / static_cast<double>(repeats);

  double count_sq = 0.0;
  double est_sum = 0.0;
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    const double dc = static_cast<double>(report.counts[i]) - report.mean_count;
    count_sq += dc * dc;
    est_sum += report.phase_estimates[i];
  }
  const double est_mean = est_sum / static_cast<double>(repeats);
  double est_sq = 0.0;
  for (const double est : report.phase_estimates) {
    est_sq += (est - est_mean) * (est - est_mean);
  }
  if (repeats > 1) {
    report.count_variance = count_sq / static_cast<double>(repeats - 1);
    report.empirical_phase_error = std::sqrt(est_sq / static_cast<double>(repeats - 1));
  }

  report.analytic_phase_error =
      std::sqrt(phase_error_squared(config.params, config.trials_per_experiment).value);
  report.ratio = report.empirical_phase_error / report.analytic_phase_error;
  return report;
}

double estimate_phase(std::int64_t observed_count, const TrialConfig& config) {
  config.validate();
  if (observed_count < 0 || observed_count > config.trials_per_experiment) {
    throw validation_error("observed_count must lie within [0, trials]");
  }
  const OperatingPoint op = operating_point(config);
  const double k = static_cast<double>(config.trials_per_experiment);
  return (static_cast<double>(observed_count) / k - op.p0) / op.slope0;
}

double sensitivity_from_trials(const TrialReport& report, const TrialConfig& config) {
  config.validate();
  if (report.empirical_phase_error <= 0.0) {
    throw validation_error("empirical phase error must be > 0");
  }
  const double k = static_cast<double>(config.trials_per_experiment);
  const double n = static_cast<double>(config.params.n_photons);
  return 1.0 / std::sqrt(k * n * report.empirical_phase_error * report.empirical_phase_error);
}

}  // namespace nphase
