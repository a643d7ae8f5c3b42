#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "myriad/common.hpp"

namespace myriad {

// ============================================================
// Deterministic RNG.
//
// One u64 master seed per run; per-purpose streams are derived as
// derive_seed(master, purpose, counter), so worker counts and call
// order of unrelated subsystems never change a stream's draws.
// The generator is splitmix64; all distributions are implemented
// on top of it explicitly so draws are identical across platforms
// and standard-library versions.
// ============================================================

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                                 std::uint64_t counter = 0) {
  std::uint64_t h = fnv1a64(purpose.data(), purpose.size());
  std::uint64_t s = master ^ (h + 0x9e3779b97f4a7c15ull);
  s ^= counter * 0xda942042e4dd58b5ull + 0x2545f4914f6cdd1dull;
  splitmix64_next(s);
  return splitmix64_next(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {
    // Burn-in so nearby seeds decorrelate immediately.
    splitmix64_next(state_);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) {
    return next_u64() % n;
  }

  // Standard normal via Box-Muller; always consumes exactly two draws.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    // Guard the log.
    u1 = u1 < 1e-300 ? 1e-300 : u1;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Derived stream. Independent of how many draws this one has made.
  Rng split(std::string_view purpose, std::uint64_t counter = 0) const {
    return Rng(derive_seed(seed_, purpose, counter));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace myriad
