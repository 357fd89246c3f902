#pragma once

#include "glhs/basis.hpp"
#include "glhs/random.hpp"
#include "glhs/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glhs {

/// Polynomial expansion sum_j c_j phi_j(x). Without a transform phi = psi
/// (tensor Legendre); with an upper-triangular R, phi_i = sum_j (R^{-T})_ij psi_j,
/// the basis orthonormalized on a discrete grid.
class PceSurrogate {
public:
  PceSurrogate(MultiIndexSet index_set, Vector coefficients, UniformBox box,
               std::optional<Matrix> transform = std::nullopt);

  const MultiIndexSet& index_set() const { return index_set_; }
  const Vector& coefficients() const { return coefficients_; }
  const std::optional<Matrix>& transform() const { return transform_; }
  const UniformBox& box() const { return box_; }

  /// Coefficients with respect to the raw Legendre basis, R^{-1} c.
  const Vector& legendre_coefficients() const { return legendre_; }

  double operator()(std::span<const double> x) const;

  /// Batch evaluation. Points must lie in the box.
  void evaluate(const Points& x, std::span<double> out) const;
  Vector evaluate(const Points& x) const;

  /// phi_j at every point, one column per basis function.
  Matrix basis_values(const Points& x) const;

private:
  MultiIndexSet index_set_;
  Vector coefficients_;
  UniformBox box_;
  std::optional<Matrix> transform_;
  Vector legendre_;
};

struct LeastSquaresResult {
  Vector coefficients;
  double residual_norm = 0.0;
};

/// argmin_c ||design * c - y||_2 by column-pivoted Householder QR.
/// Throws IllPosedFit on rank deficiency or fewer rows than columns.
LeastSquaresResult least_squares_fit(const Matrix& design, const Vector& y);

/// QR factorization of B_ij = psi_j(x_i) / sqrt(m_d) on a grid. The sign of
/// every column of Q is chosen so that diag(R) > 0.
struct GridOrthonormalization {
  MultiIndexSet index_set;
  Matrix q;     // m_d x N, orthonormal columns
  Matrix r;     // N x N, upper triangular
  Points grid;  // m_d x d

  std::size_t basis_size() const { return index_set.size(); }
};

/// Throws NeedsMoreSamples when rank(B) < N (recoverable: enlarge the grid).
GridOrthonormalization orthonormalize_on_grid(const MultiIndexSet& index_set, const Points& grid,
                                              const UniformBox& box);

/// Solves argmin sum_i (w_i / m) |y_i - g(x_i)|^2 over the span of the
/// (optionally transformed) basis. The result carries the transform so it
/// evaluates anywhere in the box.
PceSurrogate weighted_least_squares_fit(const Points& points, const Vector& y, const Vector& weights,
                                        const MultiIndexSet& index_set,
                                        const std::optional<Matrix>& transform,
                                        const UniformBox& box);

struct CrossValidationOptions {
  int folds = 5;
  Truncation truncation = Truncation::hyperbolic_cross;
  std::size_t index_cap = kDefaultIndexCap;
  /// Scores closer than tie_tolerance * mean(y^2) count as equal; the lower order wins.
  double tie_tolerance = 1e-12;
};

struct OrderScore {
  int order = 0;
  std::size_t basis_size = 0;
  double score = 0.0;  // mean validation squared error
  bool skipped = false;
  std::string note;
};

struct CrossValidationResult {
  int selected_order = 0;
  std::vector<OrderScore> scores;
};

/// K-fold cross-validation of the local polynomial order over 1..max_order.
/// Each order is orthonormalized on `grid`; fits use `weights`. Fold
/// assignment is a shuffle drawn from `rng`.
CrossValidationResult cross_validate_order(int max_order, const Points& samples, const Vector& y,
                                           const Vector& weights, const Points& grid,
                                           const UniformBox& box,
                                           const CrossValidationOptions& options, Engine& rng);

/// Assigns `count` items to `folds` folds after a seeded shuffle.
std::vector<int> assign_folds(std::size_t count, int folds, Engine& rng);

/// Scores a single order on a fixed fold assignment; nullopt when a
/// training fold is smaller than the basis.
std::optional<double> cross_validation_score(const GridOrthonormalization& orth,
                                             const Points& samples, const Vector& y,
                                             const Vector& weights, const std::vector<int>& folds,
                                             int fold_count, const UniformBox& box);

}  // namespace glhs
