#pragma once

#include <cstdint>
#include <utility>

namespace nphase {

// Execution policy for grid kernels. Serial is the reference path; Parallel
// dispatches the same per-element body across OpenMP threads. Every kernel
// writes each element to its own slot, so both policies produce bit-identical
// results and the serial path stays usable as a test oracle.
enum class Exec { Serial, Parallel };

template <class Body>
void for_each_index(std::int64_t count, Exec policy, Body&& body) {
  if (policy == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
      body(i);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      body(i);
    }
  }
}

}  // namespace nphase
