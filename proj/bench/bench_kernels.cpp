// Timing comparison of the serial reference kernels against their OpenMP
// dispatch. Grid shapes roughly match the heaviest library use.

#include <chrono>
#include <cstdio>
#include <vector>

#include "nphase/exec.hpp"
#include "nphase/fock.hpp"
#include "nphase/montecarlo.hpp"
#include "nphase/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(nphase::Exec policy, double& checksum, int which) {
  const auto start = Clock::now();
  switch (which) {
    case 0: {
      nphase::SweepSpec spec;
      spec.base = {4, 1.0, 1.0, 0.0};
      spec.axes = {{"visibility", 0.001, 1.0, 0.001}, {"efficiency", 0.001, 1.0, 0.001}};
      const auto table = nphase::sensitivity_sweep(spec, policy);
      checksum = table.rows[table.rows.size() / 2][2];
      break;
    }
    case 1: {
      nphase::TrialConfig config;
      config.params = {4, 0.75, 0.82, 0.15};
      config.true_phase = 0.001;
      config.trials_per_experiment = 1000000;
      config.experiment_repeats = 20000;
      config.rng_seed = 42;
      const auto report = nphase::run_experiments(config, policy);
      checksum = report.ratio;
      break;
    }
    default: {
      const auto input = nphase::TwoModeFockState::basis(10, 10);
      std::vector<double> grid;
      for (int i = 0; i < 20000; ++i) {
        grid.push_back(6.283185307179586 * i / 20000.0);
      }
      const auto fringe =
          nphase::event_probability_fringe(input, {{19, 1}, {1, 19}}, grid, policy);
      checksum = fringe.probability[fringe.size() / 2];
      break;
    }
  }
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif
  const char* names[] = {"sensitivity contour 1e6 points", "monte carlo 2e4 repeats",
                         "fock fringe  2e4 phases"};
  for (int which = 0; which < 3; ++which) {
    double serial_sum = 0.0;
    double parallel_sum = 0.0;
    const double serial_ms = run_ms(nphase::Exec::Serial, serial_sum, which);
    const double parallel_ms = run_ms(nphase::Exec::Parallel, parallel_sum, which);
    std::printf("%-32s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx   %s\n", names[which],
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                serial_sum == parallel_sum ? "results identical" : "RESULTS DIFFER");
  }
  return 0;
}
