#include "nphase/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "nphase/errors.hpp"

namespace nphase {

namespace {

// Sector sizes stay tiny; this cap keeps binomial coefficients exact in
// doubles and the log-factorial route accurate to ~1e-14.
constexpr int kMaxPhotons = 30;

double log_factorial(int n) {
  static const auto table = [] {
    std::array<double, kMaxPhotons + 1> t{};
    for (int i = 0; i <= kMaxPhotons; ++i) {
      t[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result = result * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return std::round(result);
}

std::complex<double> unit_power(int exponent) {
  // i^exponent for exponent >= 0
  switch (exponent & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

using Matrix = std::vector<std::vector<std::complex<double>>>;

// Sector matrix of the 50:50 splitter: element [j][n] maps |n, T-n> to
// |j, T-j>. From the binomial expansion of the mapped creation operators,
//
//   U[j][n] = 2^(-T/2) sqrt(j!(T-j)!/(n!(T-n)!)) i^(n+j)
//             sum_k (-1)^k C(n,k) C(T-n, j-k).
Matrix beam_splitter_matrix(int total) {
  Matrix u(static_cast<std::size_t>(total) + 1,
           std::vector<std::complex<double>>(static_cast<std::size_t>(total) + 1));
  const double half_log2 = 0.5 * static_cast<double>(total) * std::log(2.0);
  for (int j = 0; j <= total; ++j) {
    for (int n = 0; n <= total; ++n) {
      double sum = 0.0;
      const int k_lo = std::max(0, j - (total - n));
      const int k_hi = std::min(n, j);
      for (int k = k_lo; k <= k_hi; ++k) {
        const double term = binomial(n, k) * binomial(total - n, j - k);
        sum += (k % 2 == 0) ? term : -term;
      }
      if (sum == 0.0) {
        continue;
      }
      const double scale = std::exp(
          0.5 * (log_factorial(j) + log_factorial(total - j) - log_factorial(n) -
                 log_factorial(total - n)) -
          half_log2);
      u[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] = unit_power(n + j) * scale * sum;
    }
  }
  return u;
}

TwoModeFockState apply_matrix(const Matrix& u, const TwoModeFockState& state) {
  TwoModeFockState out;
  out.total_photons = state.total_photons;
  out.mode_labels = state.mode_labels;
  out.amplitudes.assign(state.amplitudes.size(), {0.0, 0.0});
  for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < state.amplitudes.size(); ++n) {
      acc += u[j][n] * state.amplitudes[n];
    }
    out.amplitudes[j] = acc;
  }
  return out;
}

void check_sector(int total) {
  if (total < 0) {
    throw validation_error("total photon number must be >= 0");
  }
  if (total > kMaxPhotons) {
    throw validation_error("photon sector too large (supported up to 30)");
  }
}

}  // namespace

TwoModeFockState TwoModeFockState::basis(int n, int m) {
  if (n < 0 || m < 0) {
    throw validation_error("basis occupation numbers must be >= 0");
  }
  check_sector(n + m);
  TwoModeFockState state;
  state.total_photons = n + m;
  state.amplitudes.assign(static_cast<std::size_t>(state.total_photons) + 1, {0.0, 0.0});
  state.amplitudes[static_cast<std::size_t>(n)] = {1.0, 0.0};
  return state;
}

double TwoModeFockState::norm() const {
  double sum = 0.0;
  for (const auto& amp : amplitudes) {
    sum += std::norm(amp);
  }
  return std::sqrt(sum);
}

void TwoModeFockState::validate() const {
  check_sector(total_photons);
  if (amplitudes.size() != static_cast<std::size_t>(total_photons) + 1) {
    throw validation_error("amplitude vector length must be total_photons + 1");
  }
  if (std::abs(norm() - 1.0) > 1e-12) {
    throw validation_error("state must be normalized to 1e-12");
  }
}

EventProbabilities event_probabilities(const TwoModeFockState& state) {
  state.validate();
  EventProbabilities events;
  events.total_photons = state.total_photons;
  events.probabilities.reserve(state.amplitudes.size());
  for (const auto& amp : state.amplitudes) {
    events.probabilities.push_back(std::norm(amp));
  }
  return events;
}

namespace {

std::string next_mode_pair(const std::string& labels) {
  if (labels == "ab") {
    return "cd";
  }
  if (labels == "cd") {
    return "ef";
  }
  return labels;
}

}  // namespace

TwoModeFockState apply_beam_splitter(const TwoModeFockState& state) {
  state.validate();
  TwoModeFockState out = apply_matrix(beam_splitter_matrix(state.total_photons), state);
  out.mode_labels = next_mode_pair(state.mode_labels);
  return out;
}

TwoModeFockState apply_phase_shift(const TwoModeFockState& state, double phase) {
  state.validate();
  if (!std::isfinite(phase)) {
    throw validation_error("phase must be finite");
  }
  TwoModeFockState out = state;
  for (std::size_t n = 0; n < out.amplitudes.size(); ++n) {
    const int m = out.total_photons - static_cast<int>(n);
    out.amplitudes[n] *= std::polar(1.0, static_cast<double>(m) * phase);
  }
  return out;
}

TwoModeFockState mz_output_state(const TwoModeFockState& input, double phase) {
  input.validate();
  if (!std::isfinite(phase)) {
    throw validation_error("phase must be finite");
  }
  const Matrix u = beam_splitter_matrix(input.total_photons);
  TwoModeFockState out = apply_matrix(u, apply_phase_shift(apply_matrix(u, input), phase));
  out.mode_labels = next_mode_pair(next_mode_pair(input.mode_labels));
  return out;
}

FringeTable event_probability_fringe(const TwoModeFockState& input,
                                     const std::vector<DetectionPattern>& patterns,
                                     const std::vector<double>& phase_grid,
                                     Exec policy) {
  input.validate();
  if (patterns.empty()) {
    throw validation_error("at least one detection pattern is required");
  }
  std::set<int> first_mode_counts;
  for (const auto& [n, m] : patterns) {
    if (n < 0 || m < 0 || n + m != input.total_photons) {
      throw validation_error("detection pattern outside the photon-number sector");
    }
    if (!first_mode_counts.insert(n).second) {
      throw validation_error("duplicate detection pattern");
    }
  }
  for (const double phi : phase_grid) {
    if (!std::isfinite(phi)) {
      throw validation_error("phase grid must be finite");
    }
  }

  const Matrix u = beam_splitter_matrix(input.total_photons);
  const TwoModeFockState inside = apply_matrix(u, input);

  FringeTable table;
  table.phase = phase_grid;
  table.probability.assign(phase_grid.size(), 0.0);
  for_each_index(static_cast<std::int64_t>(phase_grid.size()), policy, [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const TwoModeFockState out = apply_matrix(u, apply_phase_shift(inside, phase_grid[idx]));
    double p = 0.0;
    for (const int n : first_mode_counts) {
      p += std::norm(out.amplitudes[static_cast<std::size_t>(n)]);
    }
    table.probability[idx] = p;
  });
  return table;
}

namespace {

struct HarmonicFit {
  double offset;
  double cos_coeff;
  double sin_coeff;
};

// Linear least squares on {1, cos(f phi), sin(f phi)} via the 3x3 normal
// equations (Gaussian elimination with partial pivoting).
HarmonicFit fit_harmonic(const FringeTable& table, int frequency) {
  double m[3][4] = {};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double basis[3] = {1.0, std::cos(frequency * table.phase[i]),
                             std::sin(frequency * table.phase[i])};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        m[r][c] += basis[r] * basis[c];
      }
      m[r][3] += basis[r] * table.probability[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
        pivot = r;
      }
    }
    std::swap(m[col], m[pivot]);
    if (std::abs(m[col][col]) < 1e-12 * table.size()) {
      throw validation_error("degenerate fringe fit (grid does not resolve the frequency)");
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col) {
        continue;
      }
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) {
        m[r][c] -= factor * m[col][c];
      }
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

void check_fringe_table(const FringeTable& table, int n_photons) {
  if (n_photons < 1) {
    throw validation_error("n_photons must be >= 1");
  }
  if (table.phase.size() != table.probability.size()) {
    throw validation_error("fringe table columns have different lengths");
  }
  if (table.size() < 16) {
    throw validation_error("fringe fit needs at least 16 samples");
  }
  const auto [lo, hi] = std::minmax_element(table.phase.begin(), table.phase.end());
  const double period = 2.0 * std::numbers::pi / n_photons;
  const double span = *hi - *lo;
  // Accept endpoint-open grids: one period sampled with the closing point
  // left off still spans period * (size-1)/size.
  if (span < period * (1.0 - 2.0 / static_cast<double>(table.size()))) {
    throw validation_error("fringe table must cover at least one full period 2*pi/N");
  }
}

}  // namespace

FringeParams extract_fringe_params(const FringeTable& table, int n_photons) {
  check_fringe_table(table, n_photons);
  const HarmonicFit fit = fit_harmonic(table, n_photons);
  const double amplitude = std::hypot(fit.cos_coeff, fit.sin_coeff);

  double worst = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double model = fit.offset + fit.cos_coeff * std::cos(n_photons * table.phase[i]) +
                         fit.sin_coeff * std::sin(n_photons * table.phase[i]);
    worst = std::max(worst, std::abs(model - table.probability[i]));
  }
  if (worst > 1e-6 * std::max(amplitude, std::abs(fit.offset))) {
    throw validation_error("fringe is not a pure sinusoid at frequency N (fit residual too large)");
  }

  FringeParams params;
  params.n_photons = n_photons;
  params.efficiency = 2.0 * fit.offset;
  if (fit.offset <= 0.0) {
    if (amplitude > 1e-12) {
      throw validation_error("fringe has nonpositive mean but nonzero amplitude");
    }
    params.efficiency = std::max(params.efficiency, 0.0);
    params.visibility = 0.0;
    params.bias = 0.0;
    return params;
  }
  params.visibility = amplitude / fit.offset;
  params.bias = std::atan2(fit.cos_coeff, fit.sin_coeff) / n_photons;
  // Fits of exact simulator data can land a rounding ulp outside [0, 1].
  if (params.efficiency > 1.0 && params.efficiency < 1.0 + 1e-9) {
    params.efficiency = 1.0;
  }
  if (params.visibility > 1.0 && params.visibility < 1.0 + 1e-9) {
    params.visibility = 1.0;
  }
  params.validate();
  return params;
}

double harmonic_amplitude(const FringeTable& table, int frequency) {
  if (frequency < 1) {
    throw validation_error("frequency must be >= 1");
  }
  check_fringe_table(table, frequency);
  const HarmonicFit fit = fit_harmonic(table, frequency);
  return std::hypot(fit.cos_coeff, fit.sin_coeff);
}

}  // namespace nphase
