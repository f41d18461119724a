#pragma once

#include <cstdint>

#include "nphase/fringe.hpp"

namespace nphase {

// Squared error of the linear phase estimate at the operating point (phi=0),
//
//   dphi^2 = p(1-p) / (k * (dp/dphi)^2).
//
// Where the slope vanishes but the variance does not, a single trial carries
// no local phase information and no finite error exists; `informative` is
// false and `value` is unspecified. Kept as an explicit state rather than an
// infinity so downstream tables can tell "slope zero" apart from overflow.
struct PhaseError {
  bool informative = true;
  double value = 0.0;
};

PhaseError phase_error_squared(const FringeParams& params, std::int64_t trials);

// Same quantity written as Heisenberg limit plus excess noise,
//
//   dphi^2 = 1/(k N^2) * (1 + ((2 - eta(1+V^2)) + 2(1-eta) V sin(N Phi0))
//                             / (eta V^2 (1 - sin(N Phi0)^2))).
//
// Rejects V = 0 and |sin(N Phi0)| = 1 where this form divides by zero.
// Equal to phase_error_squared wherever both are defined.
double phase_error_excess_form(const FringeParams& params, std::int64_t trials);

// Phase sensitivity S = sqrt(1 / (k N dphi^2)), independent of k. S > 1 beats
// the standard quantum limit; S = sqrt(N) is the Heisenberg limit. Returns 0
// where the slope vanishes, except at V = 1 fringe minima where variance and
// slope vanish together and the asymptotic ratio gives S = sqrt(N eta).
double sensitivity(const FringeParams& params);

struct OptimalBias {
  double sine = 0.0;  // sin(N * Phi_opt)
  double bias = 0.0;  // representative Phi_opt with cos(N * Phi_opt) >= 0
};

// Bias phase minimizing dphi^2 at fixed (N, eta, V); params.bias is ignored.
// Closed form:
//
//   sin(N Phi_opt) = ((eta/2)(1+V^2) - 1 + sqrt((1-V^2)((1-eta/2)^2 - (eta V/2)^2)))
//                    / ((1-eta) V)
//
// with the 0/0 boundary cases resolved analytically: eta = 1 -> 0 (maximum
// slope), V = 1 -> -1 (fringe minimum).
OptimalBias optimal_bias(const FringeParams& params);

// Sensitivity at the optimal bias,
//
//   S_M^2 = N / (1 + (1-eta)^2 / (eta (1 - (eta/2)(1+V^2)
//                                 - sqrt((1-V^2)((1-eta/2)^2 - (eta V/2)^2))))).
//
// Boundary branches: V = 0 -> 0, V = 1 -> sqrt(N eta), eta = 1 -> sqrt(N) V.
double max_sensitivity(const FringeParams& params);

struct SqlThresholds {
  double visibility = 1.0;  // minimum V beating the SQL at eta = 1: 1/sqrt(N)
  double efficiency = 1.0;  // minimum eta beating the SQL at V = 1: 1/N
};

SqlThresholds sql_thresholds(int n_photons);

// Full analysis of one parameter set. Requires eta > 0 and V > 0.
struct SensitivityReport {
  FringeParams params;
  double sensitivity_at_bias = 0.0;
  double optimal_bias_sine = 0.0;
  double optimal_bias = 0.0;
  double max_sensitivity = 0.0;
  bool beats_sql = false;          // max_sensitivity > 1
  double heisenberg_ratio = 0.0;   // max_sensitivity / sqrt(N)
};

SensitivityReport sensitivity_report(const FringeParams& params);

}  // namespace nphase
