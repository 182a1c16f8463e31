#pragma once

// Deterministic, counter-based random streams.
//
// Generator: SplitMix64 (Steele, Lea & Flood).  State advances by the
// 64-bit golden-gamma constant and each output is the finalizer mix of the
// new state, so a stream is a pure function of (state0, draw index).
//
// Stream keying: derive_stream(master_seed, replication, agent, cycle)
// folds each index into the key with
//     h = mix64(h ^ (GAMMA * (index + 1)))
// starting from h = mix64(master_seed ^ GAMMA).  mix64 is the SplitMix64
// finalizer (bijective), so distinct tuples collide only by 64-bit accident.
//
// Floating point: unit doubles take the top 53 bits of a word,
// u = ((w >> 11) + 1) * 2^-53  in (0, 1].  Gaussians use Box-Muller with
// exactly two unit draws per call: z = sqrt(-2 ln u1) * cos(2 pi u2).
// Any implementation of this recipe reproduces the byte stream.

#include <cmath>
#include <cstdint>

namespace asym {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit constexpr Stream(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next_u64() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Uniform on (0, 1]; consumes one word.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal via Box-Muller; consumes exactly two words.
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  double normal(double mean, double sd) { return mean + sd * next_normal(); }

 private:
  std::uint64_t state_;
};

// Independent stream for one (replication, agent, cycle) cell.
constexpr Stream derive_stream(std::uint64_t master_seed, std::uint64_t replication,
                               std::uint64_t agent, std::uint64_t cycle) {
  std::uint64_t h = mix64(master_seed ^ kSplitMixGamma);
  h = mix64(h ^ (kSplitMixGamma * (replication + 1)));
  h = mix64(h ^ (kSplitMixGamma * (agent + 1)));
  h = mix64(h ^ (kSplitMixGamma * (cycle + 1)));
  return Stream(h);
}

}  // namespace asym
