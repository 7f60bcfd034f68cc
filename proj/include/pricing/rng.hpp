#pragma once

#include <cstdint>

namespace pricing {

/**
 * Minimal keyed PRNG used everywhere randomness is needed.
 *
 * Reproducibility contract: a replica is a pure function of its seed, so
 * every consumer of randomness draws from its own named substream derived
 * from (seed, stream id[, round index]).  splitmix64 is used instead of the
 * <random> distributions because std::uniform_real_distribution leaves the
 * draw algorithm implementation-defined, which would break bit-identical
 * reruns across toolchains.
 */
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr explicit SplitMix64(std::uint64_t s) : state(s) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

/// Deterministic key combiner for deriving substream seeds.
constexpr std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a);
  std::uint64_t h = g.next() ^ (b + 0x9e3779b97f4a7c15ull);
  SplitMix64 g2(h);
  return g2.next();
}

/// Named substreams, one per concern.
enum class Stream : std::uint64_t {
  noise = 1,        // demand noise draws, keyed additionally by round
  inventory = 2,    // iid inventory band draws, keyed additionally by round
  exploration = 3,  // policy-internal price exploration (sequential)
  monte_carlo = 4,  // per-sample keys of the Monte-Carlo reward kernel
  fuzz = 5,         // randomized instance generation in tests
};

/// Sequential substream for one concern.
constexpr SplitMix64 substream(std::uint64_t seed, Stream s) {
  return SplitMix64(mix_key(seed, static_cast<std::uint64_t>(s)));
}

/// Counter-based substream: an independent generator per (concern, index).
/// Gives random access per round/sample and order-independent parallelism.
constexpr SplitMix64 substream_at(std::uint64_t seed, Stream s,
                                  std::uint64_t index) {
  return SplitMix64(
      mix_key(mix_key(seed, static_cast<std::uint64_t>(s)), index));
}

}  // namespace pricing
