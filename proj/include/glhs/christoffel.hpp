#pragma once

#include "glhs/random.hpp"
#include "glhs/regression.hpp"

#include <vector>

namespace glhs {

/// How regression weights relate to the Christoffel density.
///  reciprocal: w_k = N / sum_j phi_j(x_k)^2, the density ratio d(tau_l)/d(nu);
///  literal:    w_k = sum_j phi_j(x_k)^2 / N, the weight written as K_C itself.
enum class WeightMode { reciprocal, literal };

/// Discrete Christoffel sampling measure on a grid.
struct ChristoffelMeasure {
  Vector probabilities;  // p_k = sum_j q_kj^2 / N, sums to one
  Vector weights;        // regression weight of each grid point
  GridOrthonormalization source;

  std::size_t basis_size() const { return source.basis_size(); }
  const Points& grid() const { return source.grid; }
  std::size_t grid_size() const { return static_cast<std::size_t>(source.grid.rows()); }
};

ChristoffelMeasure build_christoffel_measure(GridOrthonormalization orth,
                                             WeightMode mode = WeightMode::reciprocal);

enum class DrawMode {
  distinct,        // reject and redraw duplicates
  with_replacement,
};

struct ChristoffelSample {
  std::vector<std::size_t> indices;  // grid positions, in draw order
  Points points;
  Vector weights;
};

/// Draws `count` grid points from the measure's categorical distribution.
/// Throws InfeasibleDraw when distinct draws exceed the measure's support.
ChristoffelSample draw_samples(const ChristoffelMeasure& measure, std::size_t count, Engine& rng,
                               DrawMode mode = DrawMode::distinct);

/// Inverse-CDF draw of one index from a cumulative distribution whose last
/// entry is the total mass.
std::size_t draw_index(const std::vector<double>& cumulative, Engine& rng);

}  // namespace glhs
