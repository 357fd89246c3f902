#include "glhs/random.hpp"

#include "glhs/error.hpp"

#include <algorithm>

namespace glhs {

Engine make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index, std::uint64_t sub) {
  const auto tag_value = static_cast<std::uint64_t>(tag);
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(tag_value),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub >> 32),
  };
  return Engine(seq);
}

Points uniform_points(Engine& rng, const Vector& lower, const Vector& upper, Eigen::Index count) {
  const Eigen::Index d = lower.size();
  Points out(count, d);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = uniform(rng, lower[j], upper[j]);
    }
  }
  return out;
}

UniformStream::UniformStream(UniformBox box, std::uint64_t seed, StreamTag tag,
                             std::uint64_t index, std::size_t chunk_size)
  : box_(std::move(box)), seed_(seed), tag_(tag), index_(index), chunk_size_(chunk_size) {
  if (chunk_size_ == 0) throw Error("UniformStream: chunk size must be positive");
}

Points UniformStream::chunk(std::size_t k, std::size_t count) const {
  if (count > chunk_size_) throw Error("UniformStream: chunk request exceeds chunk size");
  Engine rng = make_stream(seed_, tag_, index_, k);
  return uniform_points(rng, box_, static_cast<Eigen::Index>(count));
}

Points UniformStream::head(std::size_t count) const {
  Points out(static_cast<Eigen::Index>(count), box_.dim());
  std::size_t done = 0;
  for (std::size_t k = 0; done < count; ++k) {
    const std::size_t take = std::min(chunk_size_, count - done);
    out.middleRows(static_cast<Eigen::Index>(done), static_cast<Eigen::Index>(take)) = chunk(k, take);
    done += take;
  }
  return out;
}

}  // namespace glhs
