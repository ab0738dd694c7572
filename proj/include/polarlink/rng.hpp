// Deterministic stream seeding for Monte-Carlo simulation.
//
// Every random draw in the library comes from an mt19937_64 engine seeded
// through a SplitMix64 hash of (master seed, stream tag, stream index).
// Streams are therefore independent of scheduling: block b always sees the
// same noise no matter how many workers, batches or sweep points run first.
#pragma once

#include <cstdint>
#include <random>

namespace polarlink {

// Named sub-streams of a master seed.  Keeping fading separate from data and
// noise lets a block-fading group reuse one channel draw across blocks while
// the per-block payload streams stay untouched.
enum class StreamTag : std::uint64_t {
  kFading = 1,
  kData = 2,
  kNoise = 3,
  kConstruction = 4,
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood 2014); bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Combines seed material into one well-mixed 64-bit value.  Chaining the
// finalizer over the three words avoids the correlated-seed problem of
// handing raw counters to mt19937_64.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag,
                              std::uint64_t index) {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ tag);
  h = detail::splitmix64(h ^ index);
  return h;
}

// Fresh engine for stream (seed, tag, index).  Engines are cheap enough to
// construct per block; all distribution objects must also be constructed
// fresh so no Box-Muller spare leaks between streams.
inline std::mt19937_64 make_stream(std::uint64_t seed, StreamTag tag,
                                   std::uint64_t index) {
  return std::mt19937_64(
      mix_seed(seed, static_cast<std::uint64_t>(tag), index));
}

}  // namespace polarlink
