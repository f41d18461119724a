#pragma once

#include <cstdint>

namespace nphase {

// Parameters of a lambda/N interference fringe: the detection probability of
// the selected N-photon event is
//
//   p(phi) = eta/2 * (1 + V * sin(N*(bias + phi)))
//
// where eta is the intrinsic efficiency, V the fringe visibility and bias the
// fixed operating point around which small shifts phi are measured. Phases
// are plain radians and are never wrapped; the model is periodic in
// 2*pi/n_photons.
struct FringeParams {
  int n_photons = 1;        // N >= 1
  double efficiency = 1.0;  // eta in [0, 1]
  double visibility = 1.0;  // V in [0, 1]
  double bias = 0.0;        // Phi_0, radians

  // Rejects (does not clamp) out-of-range values.
  void validate() const;
};

// p(phi), in [0, eta].
double detection_probability(const FringeParams& params, double phase);

// dp/dphi = eta/2 * V * N * cos(N*(bias + phi)).
double probability_slope(const FringeParams& params, double phase);

// Binomial variance of the event count over `trials` runs: k * p * (1 - p).
double trial_variance(const FringeParams& params, double phase, std::int64_t trials);

}  // namespace nphase
