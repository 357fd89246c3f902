#pragma once

#include "glhs/basis.hpp"
#include "glhs/types.hpp"

#include <cstdint>
#include <random>

namespace glhs {

using Engine = std::mt19937_64;

/// Purpose of a random stream. Streams with different tags (or indices) are
/// statistically independent even under the same run seed.
enum class StreamTag : std::uint64_t {
  design = 1,         // evaluation grid and initial training design
  monte_carlo = 2,    // shared Monte Carlo sample set
  repetition = 3,     // adaptive stages of one repetition
  non_iterative = 4,  // baseline sampling within one repetition
  iterative_li = 5,
  custom = 99,
};

Engine make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0,
                   std::uint64_t sub = 0);

/// Uniform double in [0, 1) with 53 random bits; identical on every platform.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi]; the clamp absorbs rounding in hi - lo.
inline double uniform(Engine& rng, double lo, double hi) {
  const double v = lo + (hi - lo) * uniform01(rng);
  return v > hi ? hi : v;
}

/// `count` points drawn uniformly in the box described by `lower`/`upper`.
Points uniform_points(Engine& rng, const Vector& lower, const Vector& upper, Eigen::Index count);

inline Points uniform_points(Engine& rng, const UniformBox& box, Eigen::Index count) {
  return uniform_points(rng, box.lower(), box.upper(), count);
}

/// Unbounded, reproducible stream of uniform points, generated in fixed-size
/// chunks that each own a substream. Point i always lands in chunk
/// i / chunk_size, so results do not depend on how chunks are scheduled.
class UniformStream {
public:
  static constexpr std::size_t kDefaultChunk = 65'536;

  UniformStream(UniformBox box, std::uint64_t seed, StreamTag tag, std::uint64_t index = 0,
                std::size_t chunk_size = kDefaultChunk);

  /// First `count` (<= chunk_size) points of chunk `k`.
  Points chunk(std::size_t k, std::size_t count) const;
  Points chunk(std::size_t k) const { return chunk(k, chunk_size_); }

  std::size_t chunk_size() const { return chunk_size_; }
  const UniformBox& box() const { return box_; }

  /// Points [0, count) of the stream.
  Points head(std::size_t count) const;

private:
  UniformBox box_;
  std::uint64_t seed_;
  StreamTag tag_;
  std::uint64_t index_;
  std::size_t chunk_size_;
};

}  // namespace glhs
