#include "nphase/rng.hpp"

#include <array>
#include <cmath>

#include "nphase/errors.hpp"

namespace nphase {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Upper tail of the Stirling series, log(n!) - (n + 1/2) log(n+1) + (n+1) - log(sqrt(2 pi)).
double stirling_tail(double n) {
  static constexpr std::array<double, 10> kTable = {
      0.0810614667953272,  0.0413406959554092,  0.0276779256849983, 0.02079067210376509,
      0.0166446911898211,  0.0138761288230707,  0.0118967099458917, 0.0104112652619720,
      0.00925546218271273, 0.00833056343336287};
  if (n < 10.0) {
    return kTable[static_cast<std::size_t>(n)];
  }
  const double np1 = n + 1.0;
  const double inv2 = 1.0 / (np1 * np1);
  return (1.0 / 12.0 - (1.0 / 360.0 - inv2 / 1260.0) * inv2) / np1;
}

// Hormann's BTRS transformed-rejection sampler, exact for k*p >= 10, p <= 0.5.
std::int64_t sample_btrs(std::mt19937_64& gen, std::int64_t trials, double p) {
  const double k = static_cast<double>(trials);
  const double spq = std::sqrt(k * p * (1.0 - p));
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = k * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double r = p / (1.0 - p);
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor((k + 1.0) * p);

  while (true) {
    const double u = uniform_unit(gen) - 0.5;
    double v = uniform_unit(gen);
    const double us = 0.5 - std::abs(u);
    const double draw = std::floor((2.0 * a / us + b) * u + c);
    if (draw < 0.0 || draw > k) {
      continue;
    }
    if (us >= 0.07 && v <= v_r) {
      return static_cast<std::int64_t>(draw);
    }
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound = (m + 0.5) * std::log((m + 1.0) / (r * (k - m + 1.0))) +
                         (k + 1.0) * std::log((k - m + 1.0) / (k - draw + 1.0)) +
                         (draw + 0.5) * std::log(r * (k - draw + 1.0) / (draw + 1.0)) +
                         stirling_tail(m) + stirling_tail(k - m) - stirling_tail(draw) -
                         stirling_tail(k - draw);
    if (v <= bound) {
      return static_cast<std::int64_t>(draw);
    }
  }
}

// BINV sequential CDF inversion, exact for small k*p.
std::int64_t sample_binv(std::mt19937_64& gen, std::int64_t trials, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = (static_cast<double>(trials) + 1.0) * s;
  double r = std::pow(q, static_cast<double>(trials));
  double u = uniform_unit(gen);
  std::int64_t x = 0;
  while (u > r) {
    u -= r;
    ++x;
    if (x > trials) {
      // Exhausted the support from accumulated rounding; the remaining mass
      // belongs to the top bin.
      return trials;
    }
    r *= a / static_cast<double>(x) - s;
  }
  return x;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t state) { return mix64(state + kGoldenGamma); }

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  return splitmix64(master_seed + stream_index * kGoldenGamma);
}

std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return std::mt19937_64(stream_seed(master_seed, stream_index));
}

double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::int64_t sample_binomial(std::mt19937_64& gen, std::int64_t trials, double p) {
  if (trials < 0) {
    throw validation_error("trials must be >= 0");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw validation_error("success probability must lie in [0, 1]");
  }
  if (trials == 0 || p == 0.0) {
    return 0;
  }
  if (p == 1.0) {
    return trials;
  }
  const bool flipped = p > 0.5;
  const double q = flipped ? 1.0 - p : p;
  const std::int64_t sample = (static_cast<double>(trials) * q < 10.0)
                                  ? sample_binv(gen, trials, q)
                                  : sample_btrs(gen, trials, q);
  return flipped ? trials - sample : sample;
}

}  // namespace nphase
