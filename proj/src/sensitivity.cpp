#include "nphase/sensitivity.hpp"

#include <cmath>

#include "nphase/errors.hpp"

namespace nphase {

namespace {

// eta = 1 and V = 1 make the printed closed forms 0/0; anything within this
// absolute distance of the boundary takes the analytic-limit branch.
constexpr double kBoundaryTol = 1e-12;

// |cos(N Phi0)| at or below this is treated as a vanished slope.
constexpr double kZeroSlopeTol = 1e-12;

void require_positive_efficiency(const FringeParams& params) {
  params.validate();
  if (params.efficiency <= 0.0) {
    throw validation_error("efficiency must be > 0 (no events are ever detected)");
  }
}

// Shared pieces of the optimal-bias and maximum-sensitivity closed forms:
//   a = 1 - (eta/2)(1 + V^2)
//   b = sqrt((1 - V^2)((1 - eta/2)^2 - (eta V/2)^2))
// They satisfy a^2 - b^2 = V^2 (1 - eta)^2 exactly, which lets both formulas
// be evaluated without the cancellation the printed forms have near eta = 1.
struct ClosedFormTerms {
  double a;
  double b;
};

ClosedFormTerms closed_form_terms(double eta, double v) {
  const double a = 1.0 - 0.5 * eta * (1.0 + v * v);
  const double inner = (1.0 - v * v) *
                       ((1.0 - 0.5 * eta) * (1.0 - 0.5 * eta) - (0.5 * eta * v) * (0.5 * eta * v));
  const double b = std::sqrt(std::max(inner, 0.0));
  return {a, b};
}

// S^2 at a bias with sine s = sin(N Phi0) and squared cosine c2, with the
// degenerate limits resolved:
//   V = 1, eta = 1        -> N at every bias (ideal N00N interferometer)
//   V = 1, fringe minimum -> N eta (zero variance and zero slope cancel)
//   slope zero otherwise  -> 0
double sensitivity_squared(int n_photons, double eta, double v, double s, double c2) {
  const double n = static_cast<double>(n_photons);
  if (v <= kBoundaryTol) {
    return 0.0;
  }
  if (v >= 1.0 - kBoundaryTol) {
    if (eta >= 1.0 - kBoundaryTol) {
      return n;
    }
    // cos^2 = (1 - s)(1 + s); the (1 + s) factor cancels against the
    // variance zero of p = (eta/2)(1 + s).
    return n * 0.5 * eta * (1.0 - s) / (1.0 - 0.5 * eta * (1.0 + s));
  }
  if (c2 <= kZeroSlopeTol * kZeroSlopeTol) {
    return 0.0;
  }
  const double q = 1.0 + v * s;                 // > 0 since V < 1
  const double p = 0.5 * eta * q;               // detection probability
  return n * 0.5 * eta * v * v * c2 / (q * (1.0 - p));
}

double sensitivity_squared_at_bias(const FringeParams& params) {
  const double angle = params.n_photons * params.bias;
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  return sensitivity_squared(params.n_photons, params.efficiency, params.visibility, s, c * c);
}

}  // namespace

PhaseError phase_error_squared(const FringeParams& params, std::int64_t trials) {
  require_positive_efficiency(params);
  if (trials < 1) {
    throw validation_error("trials must be >= 1");
  }
  const double s2 = sensitivity_squared_at_bias(params);
  if (s2 <= 0.0) {
    return {false, 0.0};
  }
  return {true, 1.0 / (static_cast<double>(trials) * params.n_photons * s2)};
}

double phase_error_excess_form(const FringeParams& params, std::int64_t trials) {
  require_positive_efficiency(params);
  if (trials < 1) {
    throw validation_error("trials must be >= 1");
  }
  const double v = params.visibility;
  if (v <= 0.0) {
    throw validation_error("excess-noise form requires visibility > 0");
  }
  const double eta = params.efficiency;
  const double n = static_cast<double>(params.n_photons);
  const double s = std::sin(n * params.bias);
  const double one_minus_s2 = 1.0 - s * s;
  if (one_minus_s2 == 0.0) {
    throw validation_error("excess-noise form requires |sin(N Phi0)| != 1");
  }
  const double k = static_cast<double>(trials);
  const double excess =
      ((2.0 - eta * (1.0 + v * v)) + 2.0 * (1.0 - eta) * v * s) / (eta * v * v * one_minus_s2);
  return (1.0 + excess) / (k * n * n);
}

double sensitivity(const FringeParams& params) {
  require_positive_efficiency(params);
  return std::sqrt(sensitivity_squared_at_bias(params));
}

OptimalBias optimal_bias(const FringeParams& params) {
  require_positive_efficiency(params);
  const double eta = params.efficiency;
  const double v = params.visibility;
  if (v <= 0.0) {
    throw validation_error("optimal bias requires visibility > 0 (sensitivity is identically zero)");
  }
  double sine = 0.0;
  if (eta >= 1.0 - kBoundaryTol) {
    sine = 0.0;  // maximum-slope point
  } else if (v >= 1.0 - kBoundaryTol) {
    sine = -1.0;  // fringe minimum
  } else {
    // Rationalized form of the printed quotient (positive square root):
    // sin(N Phi_opt) = -V (1 - eta) / (a + b).
    const auto [a, b] = closed_form_terms(eta, v);
    sine = -v * (1.0 - eta) / (a + b);
  }
  return {sine, std::asin(sine) / params.n_photons};
}

double max_sensitivity(const FringeParams& params) {
  require_positive_efficiency(params);
  const double eta = params.efficiency;
  const double v = params.visibility;
  const double n = static_cast<double>(params.n_photons);
  if (v <= kBoundaryTol) {
    return 0.0;
  }
  if (v >= 1.0 - kBoundaryTol) {
    return std::sqrt(n * eta);
  }
  if (eta >= 1.0 - kBoundaryTol) {
    return std::sqrt(n) * v;
  }
  // S_M^2 = N eta V^2 / (eta V^2 + a + b), the rationalized Eq form.
  const auto [a, b] = closed_form_terms(eta, v);
  const double ev2 = eta * v * v;
  return std::sqrt(n * ev2 / (ev2 + a + b));
}

SqlThresholds sql_thresholds(int n_photons) {
  if (n_photons < 1) {
    throw validation_error("n_photons must be >= 1");
  }
  const double n = static_cast<double>(n_photons);
  return {1.0 / std::sqrt(n), 1.0 / n};
}

SensitivityReport sensitivity_report(const FringeParams& params) {
  require_positive_efficiency(params);
  if (params.visibility <= 0.0) {
    throw validation_error("sensitivity report requires visibility > 0");
  }
  SensitivityReport report;
  report.params = params;
  report.sensitivity_at_bias = sensitivity(params);
  const OptimalBias opt = optimal_bias(params);
  report.optimal_bias_sine = opt.sine;
  report.optimal_bias = opt.bias;
  report.max_sensitivity = max_sensitivity(params);
  report.beats_sql = report.max_sensitivity > 1.0;
  report.heisenberg_ratio = report.max_sensitivity / std::sqrt(static_cast<double>(params.n_photons));
  return report;
}

}  // namespace nphase
