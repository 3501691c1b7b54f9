#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ringsim {

// splitmix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for substream (a, b) of a master seed. Distinct (a, b) give
// statistically independent streams; the scheme is scheduling-invariant.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(master) ^ (a + 0x9E3779B97F4A7C15ull)) ^
               (b + 0xC2B2AE3D27D4EB4Full));
}

// Uniform draw in (0, 1], 53-bit resolution.
inline double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller; exactly two engine draws per call, so the
// stream position is independent of the values drawn.
inline double standard_normal(std::mt19937_64& eng) {
  const double u1 = uniform_unit(eng);
  const double u2 = uniform_unit(eng);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// N(0, sd^2) truncated to |value| <= bound, by rejection.
inline double truncated_normal(std::mt19937_64& eng, double sd, double bound) {
  for (;;) {
    const double z = sd * standard_normal(eng);
    if (std::abs(z) <= bound) return z;
  }
}

// One Gaussian substream per (agent, channel); channels 0,1,2 drive the
// position, velocity and acceleration noise of Eq.-style state updates.
class NoiseStreams {
 public:
  NoiseStreams(std::uint64_t master_seed, int n_agents) {
    engines_.reserve(static_cast<std::size_t>(n_agents) * kChannels);
    for (int i = 0; i < n_agents; ++i)
      for (int c = 0; c < kChannels; ++c)
        engines_.emplace_back(substream_seed(master_seed, static_cast<std::uint64_t>(i),
                                             static_cast<std::uint64_t>(c)));
  }

  double normal(int agent, int channel) {
    return standard_normal(engines_[static_cast<std::size_t>(agent) * kChannels + channel]);
  }

  static constexpr int kChannels = 3;

 private:
  std::vector<std::mt19937_64> engines_;
};

}  // namespace ringsim
