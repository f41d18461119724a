#pragma once

#include <cstdint>
#include <vector>

#include "nphase/exec.hpp"
#include "nphase/fringe.hpp"

namespace nphase {

// One Monte Carlo verification run: R independent experiments, each counting
// the selected event over k Bernoulli trials at success probability
// p(true_phase), followed by linear phase estimation around the bias point.
struct TrialConfig {
  FringeParams params;
  double true_phase = 0.0;
  std::int64_t trials_per_experiment = 1;  // k
  std::int64_t experiment_repeats = 1;     // R
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct TrialReport {
  double mean_count = 0.0;              // empirical C_k
  double count_variance = 0.0;          // empirical Delta C_k^2 (unbiased, R-1)
  std::vector<std::int64_t> counts;     // per-repeat event counts, repeat order
  std::vector<double> phase_estimates;  // per-repeat linear estimates
  double empirical_phase_error = 0.0;   // sample std-dev of the estimates
  double analytic_phase_error = 0.0;    // sqrt(p(1-p)/(k slope^2)) at phi = 0
  double ratio = 0.0;                   // empirical / analytic
};

// Draws R binomial counts on independent sub-seeded streams (repeat i uses
// stream i of rng_seed), estimates the phase from each, and compares the
// estimate spread against the analytic error. Identical configs produce
// byte-identical reports under either execution policy.
//
// Rejects p(true_phase) in {0, 1} (no fluctuation, estimator undefined) and
// zero slope at the bias ("no local information").
TrialReport run_experiments(const TrialConfig& config, Exec policy = Exec::Parallel);

// First-order inversion of the fringe around the bias point:
//
//   phi_hat = (observed_count/k - p(0)) / (dp/dphi at 0).
//
// Valid for small shifts only; rejects zero slope.
double estimate_phase(std::int64_t observed_count, const TrialConfig& config);

// Empirical sensitivity S = (k N dphi_emp^2)^(-1/2) from a finished report.
double sensitivity_from_trials(const TrialReport& report, const TrialConfig& config);

}  // namespace nphase
