#pragma once

#include <cstdint>

namespace ciag {

/// Draw coordinates within one repetition.
enum class DrawKind : std::uint64_t { Type = 1, Claim = 2, Breach = 3, Audit = 4 };

// splitmix64 finalizer (Steele/Lea/Flood; Vigna's constants). Used here as
// the avalanche step of a keyed counter construction.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t word) {
  return mix64((h + kGoldenGamma) ^ word);
}

/// Counter-based generator: every variate is a pure function of
/// (seed, repetition, stream, kind), so draws are reproducible independently
/// of evaluation order and of which other streams are consumed.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  [[nodiscard]] constexpr std::uint64_t seed() const { return seed_; }

  [[nodiscard]] constexpr std::uint64_t word(std::uint64_t repetition,
                                             std::uint64_t stream,
                                             DrawKind kind) const {
    std::uint64_t h = absorb(seed_, repetition);
    h = absorb(h, stream);
    return absorb(h, static_cast<std::uint64_t>(kind));
  }

  /// Uniform in [0, 1) with 53 random bits.
  [[nodiscard]] constexpr double unit(std::uint64_t repetition,
                                      std::uint64_t stream,
                                      DrawKind kind) const {
    return static_cast<double>(word(repetition, stream, kind) >> 11) *
           0x1.0p-53;
  }

  [[nodiscard]] constexpr bool bernoulli(double p, std::uint64_t repetition,
                                         std::uint64_t stream,
                                         DrawKind kind) const {
    return unit(repetition, stream, kind) < p;
  }

  /// Derived generator for an independent child stream (per sweep point).
  [[nodiscard]] constexpr CounterRng child(std::uint64_t index) const {
    return CounterRng(absorb(seed_, index));
  }

 private:
  std::uint64_t seed_;
};

}  // namespace ciag
