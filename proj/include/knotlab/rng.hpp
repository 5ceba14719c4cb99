#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "knotlab/geometry.hpp"

namespace knotlab {

/// Reproducible random stream addressed by (seed, stream_id).
///
/// Backed by std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream id. Identical (seed, stream_id) pairs
/// give identical sequences; experiment shards derive stream ids from their
/// task coordinates with derive_stream_id, so results do not depend on the
/// number of worker threads. The engine and seeding scheme are fixed for a
/// release; changing either changes every campaign output.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(engine_);
  }

  double angle() { return 2.0 * std::numbers::pi * uniform(); }

  /// Uniform point on the unit sphere (Archimedes: z uniform, azimuth uniform).
  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = angle();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  /// Child stream with an id derived from this stream's id and `salt`.
  RngStream split(std::uint64_t salt) const;

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Mixes task coordinates into a 64-bit stream id (splitmix64 finalizer).
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts);

inline RngStream RngStream::split(std::uint64_t salt) const {
  return RngStream(seed_, derive_stream_id({stream_id_, salt}));
}

inline std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts) {
    h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return h;
}

} // namespace knotlab
