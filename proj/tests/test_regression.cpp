#include "glhs/error.hpp"
#include "glhs/random.hpp"
#include "glhs/regression.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glhs;

namespace {

Points grid_2d(std::uint64_t seed, Eigen::Index m) {
  Engine rng = make_stream(seed, StreamTag::custom);
  return uniform_points(rng, UniformBox::symmetric(2), m);
}

// 1 + 2 x - 0.5 x y + 0.25 y^2, inside the order-2 total-degree span.
Vector quadratic(const Points& p) {
  Vector y(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double x = p(i, 0), z = p(i, 1);
    y[i] = 1.0 + 2.0 * x - 0.5 * x * z + 0.25 * z * z;
  }
  return y;
}

}  // namespace

TEST(Orthonormalization, QIsOrthonormal) {
  const Points grid = grid_2d(1, 2000);
  const auto orth = orthonormalize_on_grid(hyperbolic_cross_indices(2, 4), grid,
                                           UniformBox::symmetric(2));
  const Eigen::Index n = orth.q.cols();
  const Matrix gram = orth.q.transpose() * orth.q;
  EXPECT_LE((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  for (Eigen::Index j = 0; j < n; ++j) EXPECT_GT(orth.r(j, j), 0.0);
  EXPECT_TRUE(orth.r.isUpperTriangular());
}

TEST(Orthonormalization, TooFewPointsNeedsMoreSamples) {
  const Points grid = grid_2d(2, 3);
  EXPECT_THROW(orthonormalize_on_grid(hyperbolic_cross_indices(2, 3), grid,
                                      UniformBox::symmetric(2)),
               NeedsMoreSamples);
}

TEST(Orthonormalization, TransformedBasisIsOrthonormalOnGrid) {
  const Points grid = grid_2d(3, 500);
  const UniformBox box = UniformBox::symmetric(2);
  const auto orth = orthonormalize_on_grid(total_degree_indices(2, 3), grid, box);
  const PceSurrogate s(orth.index_set, Vector::Zero(static_cast<Eigen::Index>(orth.basis_size())),
                       box, orth.r);
  const Matrix phi = s.basis_values(grid) / std::sqrt(500.0);
  EXPECT_LE((phi - orth.q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LeastSquares, ExactRecovery) {
  const Points p = grid_2d(4, 40);
  const UniformBox box = UniformBox::symmetric(2);
  const MultiIndexSet set = total_degree_indices(2, 2);
  const Vector y = quadratic(p);
  const PceSurrogate s = weighted_least_squares_fit(p, y, Vector::Ones(40), set, std::nullopt, box);
  const Points test = grid_2d(5, 200);
  const Vector want = quadratic(test);
  const Vector got = s.evaluate(test);
  EXPECT_LE((got - want).norm() / want.norm(), 1e-9);
}

TEST(LeastSquares, ExactRecoveryWithTransform) {
  const UniformBox box = UniformBox::symmetric(2);
  const MultiIndexSet set = total_degree_indices(2, 2);
  const auto orth = orthonormalize_on_grid(set, grid_2d(6, 300), box);
  Engine rng = make_stream(7, StreamTag::custom);
  const Points p = uniform_points(rng, box, 12);
  Vector w(12);
  for (Eigen::Index i = 0; i < 12; ++i) w[i] = 0.5 + uniform01(rng);
  const PceSurrogate s = weighted_least_squares_fit(p, quadratic(p), w, set, orth.r, box);
  const Points test = grid_2d(8, 200);
  const Vector want = quadratic(test);
  EXPECT_LE((s.evaluate(test) - want).norm() / want.norm(), 1e-9);
}

TEST(LeastSquares, UnitWeightsMatchOrdinaryLeastSquares) {
  const UniformBox box = UniformBox::symmetric(2);
  const Points p = grid_2d(9, 60);
  Vector y(60);
  for (Eigen::Index i = 0; i < 60; ++i) y[i] = std::sin(3 * p(i, 0)) + p(i, 1);
  const MultiIndexSet set = hyperbolic_cross_indices(2, 3);
  const PceSurrogate s = weighted_least_squares_fit(p, y, Vector::Ones(60), set, std::nullopt, box);
  const auto ols = least_squares_fit(eval_basis_matrix(set, p, box), y);
  EXPECT_LE((s.coefficients() - ols.coefficients).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LeastSquares, RankDeficientIsIllPosed) {
  Matrix a(4, 2);
  a << 1, 2, 2, 4, 3, 6, 4, 8;
  EXPECT_THROW(least_squares_fit(a, Vector::Ones(4)), IllPosedFit);
  EXPECT_THROW(least_squares_fit(Matrix::Ones(1, 2), Vector::Ones(1)), IllPosedFit);
}

TEST(Surrogate, LegendreCoefficientsReproduceValues) {
  const UniformBox box = UniformBox::symmetric(2);
  const MultiIndexSet set = total_degree_indices(2, 2);
  const auto orth = orthonormalize_on_grid(set, grid_2d(10, 100), box);
  Vector c(6);
  c << 0.3, -1.0, 2.0, 0.5, 0.1, -0.7;
  const PceSurrogate t(set, c, box, orth.r);
  const PceSurrogate raw(set, t.legendre_coefficients(), box);
  const Points test = grid_2d(11, 50);
  EXPECT_LE((t.evaluate(test) - raw.evaluate(test)).cwiseAbs().maxCoeff(), 1e-12);
  const double x[2] = {test(0, 0), test(0, 1)};
  EXPECT_NEAR(t(x), raw.evaluate(test)[0], 1e-12);
}

TEST(CrossValidation, FoldsAreBalancedAndSeeded) {
  Engine a = make_stream(1, StreamTag::custom);
  Engine b = make_stream(1, StreamTag::custom);
  const auto fa = assign_folds(23, 5, a);
  EXPECT_EQ(fa, assign_folds(23, 5, b));
  std::vector<int> counts(5, 0);
  for (int f : fa) ++counts[static_cast<std::size_t>(f)];
  for (int c : counts) EXPECT_TRUE(c == 4 || c == 5);
}

TEST(CrossValidation, LowerOrderWinsTies) {
  // Linear data: orders 1..3 all fit exactly, so order 1 must win.
  const UniformBox box = UniformBox::symmetric(1);
  Engine rng = make_stream(12, StreamTag::custom);
  const Points grid = uniform_points(rng, box, 500);
  const Points p = uniform_points(rng, box, 30);
  const Vector y = (2.0 * p.col(0)).array() - 1.0;
  const auto cv = cross_validate_order(3, p, y, Vector::Ones(30), grid, box, {}, rng);
  EXPECT_EQ(cv.selected_order, 1);
  ASSERT_EQ(cv.scores.size(), 3u);
  for (const auto& s : cv.scores) EXPECT_LE(s.score, 1e-20);
}

TEST(CrossValidation, PicksOrderThatResolvesCubic) {
  const UniformBox box = UniformBox::symmetric(1);
  Engine rng = make_stream(13, StreamTag::custom);
  const Points grid = uniform_points(rng, box, 500);
  const Points p = uniform_points(rng, box, 40);
  const Vector y = p.col(0).array().cube() - p.col(0).array();
  const auto cv = cross_validate_order(4, p, y, Vector::Ones(40), grid, box, {}, rng);
  EXPECT_EQ(cv.selected_order, 3);
}

TEST(CrossValidation, SkipsOrdersLargerThanFolds) {
  const UniformBox box = UniformBox::symmetric(1);
  Engine rng = make_stream(14, StreamTag::custom);
  const Points grid = uniform_points(rng, box, 200);
  const Points p = uniform_points(rng, box, 6);
  const Vector y = p.col(0);
  const auto cv = cross_validate_order(5, p, y, Vector::Ones(6), grid, box, {}, rng);
  EXPECT_EQ(cv.selected_order, 1);
  EXPECT_TRUE(cv.scores.back().skipped);
}
