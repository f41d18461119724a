#pragma once

#include <cstdint>
#include <random>

namespace nphase {

// Deterministic, cross-platform RNG scheme used by the Monte Carlo verifier.
//
// Stream layout: stream index i draws its seed from SplitMix64 evaluated at
// master_seed + (i+1)*golden_gamma, and that seed initializes a std::mt19937_64
// (fully specified by the C++ standard). Streams are therefore independent of
// thread scheduling: repeat i always sees the same byte sequence.
std::uint64_t splitmix64(std::uint64_t state);
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index);
std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
double uniform_unit(std::mt19937_64& gen);

// Exact binomial(k, p) sample. Small k*min(p,1-p) uses CDF inversion (BINV);
// large uses Hormann's BTRS transformed rejection, which is exact and O(1)
// per variate. Both consume uniforms only from `gen`, so results are
// reproducible given the stream seed.
std::int64_t sample_binomial(std::mt19937_64& gen, std::int64_t trials, double p);

}  // namespace nphase
