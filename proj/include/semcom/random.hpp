#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace semcom {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent stream seed for one (sweep point, sentence, trial) cell.
// Distinct coordinate tuples map to distinct seeds, so concurrent trials
// never share a stream.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::initializer_list<std::uint64_t> coords) {
  std::uint64_t state = master_seed;
  std::uint64_t seed = splitmix64(state);
  for (const std::uint64_t c : coords) {
    state ^= c + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2);
    seed = splitmix64(state);
  }
  return seed;
}

// Deterministic random stream. Gaussians come from a hand-rolled Box-Muller
// transform because std::normal_distribution output is not pinned by the
// standard and would break bit-reproducible reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1].
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard complex Gaussian CN(0, 1): real and imaginary parts are
  // independent N(0, 1/2).
  std::complex<double> complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform_pos()));
    const double phi = 2.0 * M_PI * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  // Pair of independent N(0, 1) draws.
  std::pair<double, double> gaussian_pair() {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = 2.0 * M_PI * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace semcom
