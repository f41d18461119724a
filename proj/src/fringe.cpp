#include "nphase/fringe.hpp"

#include <cmath>

#include "nphase/errors.hpp"

namespace nphase {

void FringeParams::validate() const {
  if (n_photons < 1) {
    throw validation_error("n_photons must be >= 1");
  }
  if (!std::isfinite(efficiency) || efficiency < 0.0 || efficiency > 1.0) {
    throw validation_error("efficiency must lie in [0, 1]");
  }
  if (!std::isfinite(visibility) || visibility < 0.0 || visibility > 1.0) {
    throw validation_error("visibility must lie in [0, 1]");
  }
  if (!std::isfinite(bias)) {
    throw validation_error("bias must be finite");
  }
}

namespace {

void check_inputs(const FringeParams& params, double phase) {
  params.validate();
  if (!std::isfinite(phase)) {
    throw validation_error("phase must be finite");
  }
}

}  // namespace

double detection_probability(const FringeParams& params, double phase) {
  check_inputs(params, phase);
  const double total = params.n_photons * (params.bias + phase);
  return 0.5 * params.efficiency * (1.0 + params.visibility * std::sin(total));
}

double probability_slope(const FringeParams& params, double phase) {
  check_inputs(params, phase);
  const double total = params.n_photons * (params.bias + phase);
  return 0.5 * params.efficiency * params.visibility * params.n_photons * std::cos(total);
}

double trial_variance(const FringeParams& params, double phase, std::int64_t trials) {
  if (trials < 1) {
    throw validation_error("trials must be >= 1");
  }
  const double p = detection_probability(params, phase);
  return static_cast<double>(trials) * p * (1.0 - p);
}

}  // namespace nphase
