#include "glhs/christoffel.hpp"

#include "glhs/error.hpp"

#include <algorithm>
#include <sstream>

namespace glhs {

ChristoffelMeasure build_christoffel_measure(GridOrthonormalization orth, WeightMode mode) {
  const Eigen::Index m = orth.q.rows();
  const double n = static_cast<double>(orth.basis_size());
  const double md = static_cast<double>(m);

  ChristoffelMeasure out;
  out.probabilities.resize(m);
  out.weights.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double leverage = orth.q.row(k).squaredNorm();
    if (!(leverage > 0.0)) {
      std::ostringstream msg;
      msg << "build_christoffel_measure: grid point " << k << " has zero Christoffel mass";
      throw DegeneratePoint(msg.str());
    }
    out.probabilities[k] = leverage / n;
    // sum_j phi_j(x_k)^2 = m_d * leverage
    const double kernel = md * leverage / n;
    out.weights[k] = mode == WeightMode::reciprocal ? 1.0 / kernel : kernel;
  }
  // Columns of Q are unit vectors, so the sum is one up to rounding.
  out.probabilities /= out.probabilities.sum();
  out.source = std::move(orth);
  return out;
}

std::size_t draw_index(const std::vector<double>& cumulative, Engine& rng) {
  const double u = uniform01(rng) * cumulative.back();
  // upper_bound skips zero-mass entries, which repeat the previous cumulative value.
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) {
    // u rounded up to the total: take the last entry with positive mass.
    it = std::lower_bound(cumulative.begin(), cumulative.end(), cumulative.back());
  }
  return static_cast<std::size_t>(it - cumulative.begin());
}

namespace {

std::vector<double> cumulative_of(const Vector& p, const std::vector<bool>& taken) {
  std::vector<double> c(static_cast<std::size_t>(p.size()));
  double acc = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (!taken[static_cast<std::size_t>(k)]) acc += p[k];
    c[static_cast<std::size_t>(k)] = acc;
  }
  return c;
}

}  // namespace

ChristoffelSample draw_samples(const ChristoffelMeasure& measure, std::size_t count, Engine& rng,
                               DrawMode mode) {
  const Vector& p = measure.probabilities;
  const auto support = static_cast<std::size_t>((p.array() > 0.0).count());
  if (mode == DrawMode::distinct && count > support) {
    std::ostringstream msg;
    msg << "draw_samples: cannot draw " << count << " distinct points from a measure supported on "
        << support << " grid points";
    throw InfeasibleDraw(msg.str());
  }
  if (count > 0 && support == 0) throw InfeasibleDraw("draw_samples: measure has no mass");

  ChristoffelSample out;
  out.indices.reserve(count);
  std::vector<bool> taken(static_cast<std::size_t>(p.size()), false);
  std::vector<double> cumulative = cumulative_of(p, taken);

  // After this many consecutive duplicates the draw switches to the
  // renormalized remaining mass, which has the same distribution as
  // continuing to reject.
  const std::size_t rejection_limit = 1000 + 100 * count;
  std::size_t rejections = 0;
  bool renormalized = false;
  while (out.indices.size() < count) {
    const std::size_t k = draw_index(cumulative, rng);
    if (mode == DrawMode::distinct && taken[k]) {
      if (++rejections >= rejection_limit) {
        cumulative = cumulative_of(p, taken);
        renormalized = true;
      }
      continue;
    }
    taken[k] = true;
    out.indices.push_back(k);
    rejections = 0;
    if (renormalized && out.indices.size() < count) cumulative = cumulative_of(p, taken);
  }

  const Points& grid = measure.grid();
  out.points.resize(static_cast<Eigen::Index>(count), grid.cols());
  out.weights.resize(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = static_cast<Eigen::Index>(out.indices[i]);
    out.points.row(static_cast<Eigen::Index>(i)) = grid.row(k);
    out.weights[static_cast<Eigen::Index>(i)] = measure.weights[k];
  }
  return out;
}

}  // namespace glhs
