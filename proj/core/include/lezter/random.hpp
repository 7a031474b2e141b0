#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace lezter {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a path of indices, e.g.
/// derive_seed(master, {eps_idx, len_idx, realization}). Deterministic and
/// order-sensitive; distinct paths give statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(parent ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t v : path) h = mix64(h ^ mix64(v + 0x3c6ef372fe94f82bULL));
  return h;
}

/// Seeded generator with draws that do not depend on the standard library's
/// implementation-defined distributions, so results are identical across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) {
    // Rejection keeps the draw exactly uniform: [threshold, 2^64) holds a
    // whole number of copies of [0, n).
    const auto bound = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = engine_();
    while (r < threshold) r = engine_();
    return static_cast<std::size_t>(r % bound);
  }

  std::size_t operator()(std::size_t n) { return uniform_index(n); }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lezter
