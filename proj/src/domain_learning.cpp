#include "glhs/domain_learning.hpp"

#include "glhs/error.hpp"
#include "glhs/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glhs {

bool Hyperrectangle::contains_row(const Points& x, Eigen::Index row) const {
  for (Eigen::Index k = 0; k < lower.size(); ++k) {
    const double v = x(row, k);
    if (!(v >= lower[k] && v <= upper[k])) return false;
  }
  return true;
}

BufferZone compute_buffer_zone(const Points& grid, std::span<const double> values, double eta,
                               int generation) {
  const auto n = static_cast<std::size_t>(grid.rows());
  if (values.size() != n) throw Error("compute_buffer_zone: value count mismatch");
  BufferZone zone;
  zone.threshold = eta;
  zone.generation = generation;
  zone.indices.resize(n);
  const std::size_t count =
      n == 0 ? 0 : simd::active_kernels().select_abs_le(values.data(), n, eta, zone.indices.data());
  zone.indices.resize(count);
  zone.points.resize(static_cast<Eigen::Index>(count), grid.cols());
  for (std::size_t i = 0; i < count; ++i) {
    zone.points.row(static_cast<Eigen::Index>(i)) = grid.row(static_cast<Eigen::Index>(zone.indices[i]));
  }
  return zone;
}

BufferZone compute_buffer_zone(const Points& grid, const HybridSurrogate& chain, double eta,
                               int generation) {
  const Vector v = chain.evaluate(grid);
  return compute_buffer_zone(grid, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
                             eta, generation);
}

Hyperrectangle bounding_hyperrectangle(const BufferZone& zone, double eps, const UniformBox& box) {
  if (zone.empty()) throw EmptyZone("bounding_hyperrectangle: buffer zone is empty");
  if (!(eps >= 0.0)) throw Error("bounding_hyperrectangle: padding must be non-negative");
  if (zone.points.cols() != box.dim()) throw Error("bounding_hyperrectangle: dimension mismatch");
  Hyperrectangle rect;
  rect.lower = zone.points.colwise().minCoeff().transpose();
  rect.upper = zone.points.colwise().maxCoeff().transpose();
  for (Eigen::Index k = 0; k < rect.lower.size(); ++k) {
    rect.lower[k] = std::max(rect.lower[k] - eps, box.lower()[k]);
    rect.upper[k] = std::min(rect.upper[k] + eps, box.upper()[k]);
  }
  return rect;
}

namespace {

void check_resample_options(const ResampleOptions& options) {
  if (options.target < 1) throw Error("resample_buffer: target size must be at least 1");
  if (!(options.batch_factor > 1.0)) throw Error("resample_buffer: batch factor must exceed 1");
  if (options.max_idle_batches < 1) throw Error("resample_buffer: idle-batch limit must be positive");
}

}  // namespace

void extend_dense_zone(DenseZone& dense, const Hyperrectangle& rect, const HybridSurrogate& chain,
                       const ResampleOptions& options, Engine& rng) {
  check_resample_options(options);
  if (dense.size() >= options.target) {
    dense.points.conservativeResize(static_cast<Eigen::Index>(options.target), Eigen::NoChange);
    dense.from_grid = std::min(dense.from_grid, options.target);
    return;
  }
  const auto batch = static_cast<Eigen::Index>(
      std::ceil(options.batch_factor * static_cast<double>(options.target)));
  const double eta = dense.threshold;
  const simd::KernelSet& k = simd::active_kernels();

  std::vector<Points> accepted;
  std::size_t have = dense.size();
  std::vector<double> values(static_cast<std::size_t>(batch));
  std::vector<std::size_t> sel(static_cast<std::size_t>(batch));
  int idle = 0;
  while (have < options.target) {
    const Points proposal = uniform_points(rng, rect.lower, rect.upper, batch);
    chain.evaluate(proposal, values);
    const std::size_t count = k.select_abs_le(values.data(), values.size(), eta, sel.data());
    dense.drawn += static_cast<std::size_t>(batch);
    dense.accepted += count;
    ++dense.batches;
    if (count == 0) {
      if (++idle >= options.max_idle_batches) {
        std::ostringstream msg;
        msg << "resample_buffer: no buffer point in " << idle << " consecutive batches of " << batch
            << " (" << have << " of " << options.target
            << " collected); increase the threshold or the rectangle padding";
        throw VanishingBuffer(msg.str());
      }
      continue;
    }
    idle = 0;
    const std::size_t keep = std::min(count, options.target - have);
    Points rows(static_cast<Eigen::Index>(keep), proposal.cols());
    for (std::size_t i = 0; i < keep; ++i) {
      rows.row(static_cast<Eigen::Index>(i)) = proposal.row(static_cast<Eigen::Index>(sel[i]));
    }
    have += keep;
    accepted.push_back(std::move(rows));
  }

  const Eigen::Index start = dense.points.rows();
  dense.points.conservativeResize(static_cast<Eigen::Index>(options.target), Eigen::NoChange);
  Eigen::Index at = start;
  for (const Points& rows : accepted) {
    dense.points.middleRows(at, rows.rows()) = rows;
    at += rows.rows();
  }
}

DenseZone resample_buffer(const BufferZone& zone, const Hyperrectangle& rect,
                          const HybridSurrogate& chain, double eta,
                          const ResampleOptions& options, Engine& rng) {
  check_resample_options(options);
  if (rect.dim() != chain.box().dim()) throw Error("resample_buffer: dimension mismatch");
  DenseZone dense;
  dense.threshold = eta;
  dense.generation = zone.generation;
  dense.points = zone.points;
  dense.from_grid = zone.size();
  extend_dense_zone(dense, rect, chain, options, rng);
  return dense;
}

std::optional<DomainLearningResult> domain_learning_step(
    const Points& grid, std::span<const double> grid_values, const HybridSurrogate& chain,
    double eta, const MultiIndexSet& index_set, std::size_t sample_count,
    const DomainLearningOptions& options, Engine& rng, int generation) {
  BufferZone zone = compute_buffer_zone(grid, grid_values, eta, generation);
  if (zone.empty()) return std::nullopt;

  DomainLearningResult out;
  out.rect = bounding_hyperrectangle(zone, options.padding, chain.box());
  ResampleOptions resample{options.dense_size, options.batch_factor, options.max_idle_batches};
  out.dense = resample_buffer(zone, out.rect, chain, eta, resample, rng);

  std::optional<GridOrthonormalization> orth;
  try {
    orth = orthonormalize_on_grid(index_set, out.dense.points, chain.box());
  } catch (const NeedsMoreSamples& e) {
    std::ostringstream msg;
    msg << "dense zone of " << out.dense.size() << " points is rank deficient (" << e.what()
        << "); doubling it";
    out.messages.push_back(msg.str());
    resample.target *= 2;
    extend_dense_zone(out.dense, out.rect, chain, resample, rng);
    orth = orthonormalize_on_grid(index_set, out.dense.points, chain.box());
  }
  out.measure = build_christoffel_measure(std::move(*orth), options.weight_mode);
  out.sample = draw_samples(out.measure, sample_count, rng, options.draw_mode);
  out.zone = std::move(zone);
  return out;
}

std::optional<DomainLearningResult> domain_learning_step(
    const Points& grid, const HybridSurrogate& chain, double eta, const MultiIndexSet& index_set,
    std::size_t sample_count, const DomainLearningOptions& options, Engine& rng,
    int generation) {
  const Vector v = chain.evaluate(grid);
  return domain_learning_step(grid, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
                              chain, eta, index_set, sample_count, options, rng, generation);
}

}  // namespace glhs
