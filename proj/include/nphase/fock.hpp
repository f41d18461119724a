#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "nphase/exec.hpp"
#include "nphase/fringe.hpp"
#include "nphase/table.hpp"

namespace nphase {

// Pure state of two bosonic modes within a fixed total-photon sector.
// amplitudes[n] multiplies the basis ket |n, total_photons - n>. Photon
// number is conserved by every transformation here, so the sector vector is
// exact (no truncation).
//
// mode_labels names the mode pair the amplitudes refer to. Beam splitters
// advance the interferometer chain ab -> cd -> ef (input, internal, output);
// any other label pair passes through unchanged.
struct TwoModeFockState {
  int total_photons = 0;
  std::vector<std::complex<double>> amplitudes;  // size total_photons + 1
  std::string mode_labels = "ab";

  // Basis state |n, m>.
  static TwoModeFockState basis(int n, int m);

  double norm() const;
  void validate() const;  // size and unit norm (1e-12)
};

// Event-pattern distribution over |n, total - n>: probabilities[n] is the
// probability of detecting n photons in the first output mode.
struct EventProbabilities {
  int total_photons = 0;
  std::vector<double> probabilities;
};

EventProbabilities event_probabilities(const TwoModeFockState& state);

// 50:50 beam splitter in the symmetric convention: the reflected amplitude
// carries the imaginary unit,
//
//   a1+ -> (a1+ + i a2+)/sqrt(2),   a2+ -> (i a1+ + a2+)/sqrt(2).
//
// Matrix elements come from the binomial expansion of the mapped creation
// operators with factorial ratios evaluated through log-factorials.
TwoModeFockState apply_beam_splitter(const TwoModeFockState& state);

// Phase shift on the second mode: amplitude of |n, m> gains exp(i m phase).
TwoModeFockState apply_phase_shift(const TwoModeFockState& state, double phase);

// Mach-Zehnder interferometer: beam splitter, phase shift on the internal
// second mode, beam splitter.
TwoModeFockState mz_output_state(const TwoModeFockState& input, double phase);

// Detection pattern (n in first output mode, m in second), n + m = total.
using DetectionPattern = std::pair<int, int>;

// Sampled fringe P(phi) = sum over patterns of |<pattern|psi_out(phi)>|^2.
struct FringeTable {
  std::vector<double> phase;
  std::vector<double> probability;

  std::size_t size() const { return phase.size(); }
};

FringeTable event_probability_fringe(const TwoModeFockState& input,
                                     const std::vector<DetectionPattern>& patterns,
                                     const std::vector<double>& phase_grid,
                                     Exec policy = Exec::Parallel);

// Recovers (eta, V, Phi0) from a sampled pure lambda/N fringe by linear
// least squares on {1, cos(N phi), sin(N phi)}. The table must cover at
// least one full period 2*pi/N with >= 16 points, and the residual must stay
// below 1e-6 of the fitted scale (the data has to actually be a single
// sinusoid at frequency N).
FringeParams extract_fringe_params(const FringeTable& table, int n_photons);

// Least-squares amplitude of the cos/sin pair at an arbitrary trial
// frequency; used to check which harmonics a fringe contains.
double harmonic_amplitude(const FringeTable& table, int frequency);

}  // namespace nphase
