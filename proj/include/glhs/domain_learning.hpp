#pragma once

#include "glhs/christoffel.hpp"
#include "glhs/hybrid.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glhs {

/// Grid points with |g(x)| <= threshold under the chain of a given depth.
struct BufferZone {
  Points points;
  std::vector<std::size_t> indices;  // rows of the parent grid, ascending
  double threshold = 0.0;
  int generation = 0;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

struct Hyperrectangle {
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains_row(const Points& x, Eigen::Index row) const;
};

/// Buffer zone from precomputed chain values at the grid.
BufferZone compute_buffer_zone(const Points& grid, std::span<const double> values, double eta,
                               int generation = 0);

BufferZone compute_buffer_zone(const Points& grid, const HybridSurrogate& chain, double eta,
                               int generation = 0);

/// Componentwise extrema of the zone padded by eps and clipped to the box.
/// Throws EmptyZone for an empty zone.
Hyperrectangle bounding_hyperrectangle(const BufferZone& zone, double eps, const UniformBox& box);

struct ResampleOptions {
  std::size_t target = 10'000;   // m_d
  double batch_factor = 1.5;     // c_r, m_r = ceil(c_r * m_d)
  int max_idle_batches = 50;     // consecutive batches without an acceptance
};

/// Buffer points ready for orthonormalization: the stage-(a) grid points
/// first, then accepted resamples in draw order.
struct DenseZone {
  Points points;
  std::size_t from_grid = 0;
  std::size_t drawn = 0;      // uniform points proposed
  std::size_t accepted = 0;   // proposals inside the buffer, kept or not
  std::size_t batches = 0;
  double threshold = 0.0;
  int generation = 0;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
};

/// Rejection resampling inside `rect` until options.target buffer points are
/// available; the result holds exactly that many. Throws VanishingBuffer when
/// max_idle_batches consecutive batches accept nothing.
DenseZone resample_buffer(const BufferZone& zone, const Hyperrectangle& rect,
                          const HybridSurrogate& chain, double eta,
                          const ResampleOptions& options, Engine& rng);

/// Continues the resampling of an existing dense zone up to a larger target.
void extend_dense_zone(DenseZone& dense, const Hyperrectangle& rect, const HybridSurrogate& chain,
                       const ResampleOptions& options, Engine& rng);

struct DomainLearningOptions {
  std::size_t dense_size = 10'000;
  double batch_factor = 1.5;
  double padding = 0.01;
  int max_idle_batches = 50;
  WeightMode weight_mode = WeightMode::reciprocal;
  DrawMode draw_mode = DrawMode::distinct;
};

struct DomainLearningResult {
  BufferZone zone;
  Hyperrectangle rect;
  DenseZone dense;
  ChristoffelMeasure measure;
  ChristoffelSample sample;
  std::vector<std::string> messages;
};

/// Stages (a)-(d): buffer zone, hyperrectangle, densification, orthonormalization
/// of `index_set` on the dense zone and a Christoffel draw of `sample_count`
/// points. nullopt when the stage-(a) zone is empty. On a rank-deficient dense
/// zone the target is doubled once.
std::optional<DomainLearningResult> domain_learning_step(
    const Points& grid, std::span<const double> grid_values, const HybridSurrogate& chain,
    double eta, const MultiIndexSet& index_set, std::size_t sample_count,
    const DomainLearningOptions& options, Engine& rng, int generation = 0);

std::optional<DomainLearningResult> domain_learning_step(
    const Points& grid, const HybridSurrogate& chain, double eta, const MultiIndexSet& index_set,
    std::size_t sample_count, const DomainLearningOptions& options, Engine& rng,
    int generation = 0);

}  // namespace glhs
