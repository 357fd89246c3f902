#include "glhs/regression.hpp"

#include "glhs/error.hpp"
#include "glhs/simd/kernels.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace glhs {

PceSurrogate::PceSurrogate(MultiIndexSet index_set, Vector coefficients, UniformBox box,
                           std::optional<Matrix> transform)
  : index_set_(std::move(index_set)),
    coefficients_(std::move(coefficients)),
    box_(std::move(box)),
    transform_(std::move(transform)) {
  const auto n = static_cast<Eigen::Index>(index_set_.size());
  if (coefficients_.size() != n) {
    throw Error("PceSurrogate: coefficient count does not match the index set");
  }
  if (box_.dim() != index_set_.dim()) {
    throw Error("PceSurrogate: box dimension does not match the index set");
  }
  if (transform_) {
    const Matrix& r = *transform_;
    if (r.rows() != n || r.cols() != n) throw Error("PceSurrogate: transform must be N x N");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (r(j, j) == 0.0) throw Error("PceSurrogate: transform has a zero diagonal entry");
    }
    legendre_ = r.triangularView<Eigen::Upper>().solve(coefficients_);
  } else {
    legendre_ = coefficients_;
  }
}

double PceSurrogate::operator()(std::span<const double> x) const {
  Points p(1, index_set_.dim());
  if (static_cast<int>(x.size()) != index_set_.dim()) {
    throw DomainViolation("PceSurrogate: point dimension mismatch");
  }
  for (int k = 0; k < index_set_.dim(); ++k) p(0, k) = x[k];
  double out = 0.0;
  evaluate(p, std::span<double>(&out, 1));
  return out;
}

void PceSurrogate::evaluate(const Points& x, std::span<double> out) const {
  if (static_cast<Eigen::Index>(out.size()) != x.rows()) {
    throw Error("PceSurrogate::evaluate: output size mismatch");
  }
  if (x.cols() != index_set_.dim()) throw DomainViolation("PceSurrogate: point dimension mismatch");
  if (x.rows() == 0) return;
  box_.require_contains(x);
  const Points canonical = box_.to_canonical(x);
  simd::ExpansionView view{index_set_.dim(), index_set_.size(),
                           index_set_.flat_exponents().data(), index_set_.max_degrees().data(),
                           legendre_.data()};
  simd::active_kernels().eval_expansion(view, canonical.data(),
                                        static_cast<std::size_t>(canonical.rows()),
                                        static_cast<std::size_t>(canonical.rows()), out.data());
}

Vector PceSurrogate::evaluate(const Points& x) const {
  Vector out(x.rows());
  evaluate(x, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Matrix PceSurrogate::basis_values(const Points& x) const {
  Matrix psi = eval_basis_matrix(index_set_, x, box_);
  if (!transform_) return psi;
  return transform_->triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(psi);
}

LeastSquaresResult least_squares_fit(const Matrix& design, const Vector& y) {
  if (design.rows() != y.size()) throw Error("least_squares_fit: row count mismatch");
  if (design.rows() < design.cols()) {
    std::ostringstream msg;
    msg << "least_squares_fit: " << design.rows() << " rows cannot determine " << design.cols()
        << " coefficients";
    throw IllPosedFit(msg.str(), static_cast<std::size_t>(design.rows()));
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  const auto rank = static_cast<std::size_t>(qr.rank());
  if (rank < static_cast<std::size_t>(design.cols())) {
    std::ostringstream msg;
    msg << "least_squares_fit: design matrix has numerical rank " << rank << " < "
        << design.cols();
    throw IllPosedFit(msg.str(), rank);
  }
  LeastSquaresResult out;
  out.coefficients = qr.solve(y);
  out.residual_norm = (design * out.coefficients - y).norm();
  return out;
}

GridOrthonormalization orthonormalize_on_grid(const MultiIndexSet& index_set, const Points& grid,
                                              const UniformBox& box) {
  const auto n = static_cast<Eigen::Index>(index_set.size());
  const Eigen::Index m = grid.rows();
  if (m < n) {
    std::ostringstream msg;
    msg << "orthonormalize_on_grid: grid of " << m << " points cannot support " << n
        << " basis functions";
    throw NeedsMoreSamples(msg.str(), static_cast<std::size_t>(m));
  }
  const Matrix b = eval_basis_matrix(index_set, grid, box) / std::sqrt(static_cast<double>(m));

  Eigen::ColPivHouseholderQR<Matrix> pivoted(b);
  if (pivoted.rank() < n) {
    std::ostringstream msg;
    msg << "orthonormalize_on_grid: measurement matrix has rank " << pivoted.rank() << " < " << n;
    throw NeedsMoreSamples(msg.str(), static_cast<std::size_t>(pivoted.rank()));
  }

  // Unpivoted factorization keeps phi_i a combination of psi_1..psi_i.
  Eigen::HouseholderQR<Matrix> qr(b);
  GridOrthonormalization out{index_set, Matrix(), Matrix(), grid};
  out.r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  out.q = qr.householderQ() * Matrix::Identity(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (out.r(j, j) < 0.0) {
      out.r.row(j) *= -1.0;
      out.q.col(j) *= -1.0;
    }
  }
  return out;
}

PceSurrogate weighted_least_squares_fit(const Points& points, const Vector& y, const Vector& weights,
                                        const MultiIndexSet& index_set,
                                        const std::optional<Matrix>& transform,
                                        const UniformBox& box) {
  const Eigen::Index m = points.rows();
  if (y.size() != m || weights.size() != m) {
    throw Error("weighted_least_squares_fit: sample, response and weight counts differ");
  }
  if (m < static_cast<Eigen::Index>(index_set.size())) {
    std::ostringstream msg;
    msg << "weighted_least_squares_fit: " << m << " samples for " << index_set.size()
        << " basis functions";
    throw IllPosedFit(msg.str(), static_cast<std::size_t>(m));
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(weights[i] > 0.0)) throw Error("weighted_least_squares_fit: weights must be positive");
  }
  Matrix phi = eval_basis_matrix(index_set, points, box);
  if (transform) phi = transform->triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(phi);
  const Vector scale = (weights.array() / static_cast<double>(m)).sqrt().matrix();
  const Matrix a = scale.asDiagonal() * phi;
  const Vector rhs = scale.cwiseProduct(y);
  LeastSquaresResult fit = least_squares_fit(a, rhs);
  return PceSurrogate(index_set, std::move(fit.coefficients), box, transform);
}

std::vector<int> assign_folds(std::size_t count, int folds, Engine& rng) {
  if (folds < 2) throw Error("assign_folds: need at least two folds");
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  for (std::size_t i = count; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
    std::swap(order[i - 1], order[j < i ? j : i - 1]);
  }
  std::vector<int> fold(count);
  for (std::size_t pos = 0; pos < count; ++pos) {
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  }
  return fold;
}

std::optional<double> cross_validation_score(const GridOrthonormalization& orth,
                                             const Points& samples, const Vector& y,
                                             const Vector& weights, const std::vector<int>& folds,
                                             int fold_count, const UniformBox& box) {
  const auto n = static_cast<Eigen::Index>(orth.basis_size());
  const Eigen::Index m = samples.rows();
  Matrix phi = eval_basis_matrix(orth.index_set, samples, box);
  phi = orth.r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(phi);

  double total = 0.0;
  int used = 0;
  for (int k = 0; k < fold_count; ++k) {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
    for (Eigen::Index i = 0; i < m; ++i) (folds[i] == k ? test : train).push_back(i);
    if (test.empty()) continue;
    if (static_cast<Eigen::Index>(train.size()) < n) return std::nullopt;

    const auto mt = static_cast<Eigen::Index>(train.size());
    Matrix a(mt, n);
    Vector rhs(mt);
    for (Eigen::Index r = 0; r < mt; ++r) {
      const double s = std::sqrt(weights[train[r]] / static_cast<double>(mt));
      a.row(r) = s * phi.row(train[r]);
      rhs[r] = s * y[train[r]];
    }
    Vector c;
    try {
      c = least_squares_fit(a, rhs).coefficients;
    } catch (const IllPosedFit&) {
      return std::nullopt;
    }
    double sq = 0.0;
    for (Eigen::Index t : test) {
      const double e = phi.row(t).dot(c) - y[t];
      sq += e * e;
    }
    total += sq / static_cast<double>(test.size());
    ++used;
  }
  if (used == 0) return std::nullopt;
  return total / used;
}

CrossValidationResult cross_validate_order(int max_order, const Points& samples, const Vector& y,
                                           const Vector& weights, const Points& grid,
                                           const UniformBox& box,
                                           const CrossValidationOptions& options, Engine& rng) {
  if (max_order < 1) throw Error("cross_validate_order: maximum order must be at least 1");
  const std::vector<int> folds = assign_folds(static_cast<std::size_t>(samples.rows()),
                                              options.folds, rng);
  const double scale = y.size() > 0 ? y.squaredNorm() / static_cast<double>(y.size()) : 0.0;
  const double tie = options.tie_tolerance * std::max(scale, 1e-300);

  CrossValidationResult result;
  const OrderScore* best = nullptr;
  for (int order = 1; order <= max_order; ++order) {
    OrderScore entry;
    entry.order = order;
    const MultiIndexSet index_set =
        make_index_set(options.truncation, box.dim(), order, options.index_cap);
    entry.basis_size = index_set.size();
    try {
      const GridOrthonormalization orth = orthonormalize_on_grid(index_set, grid, box);
      const auto score = cross_validation_score(orth, samples, y, weights, folds, options.folds, box);
      if (score) {
        entry.score = *score;
      } else {
        entry.skipped = true;
        entry.note = "training fold smaller than the basis";
      }
    } catch (const NeedsMoreSamples& e) {
      entry.skipped = true;
      entry.note = e.what();
    }
    result.scores.push_back(entry);
  }
  for (const OrderScore& s : result.scores) {
    if (s.skipped) continue;
    if (best == nullptr || s.score < best->score - tie) best = &s;
  }
  if (best == nullptr) {
    throw CrossValidationFailure("cross_validate_order: every candidate order was skipped");
  }
  result.selected_order = best->order;
  return result;
}

}  // namespace glhs
