#include "glhs/basis.hpp"
#include "glhs/error.hpp"
#include "glhs/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace glhs;

namespace {

std::set<std::vector<int>> brute_force_hc(int d, int n) {
  std::set<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(d), 0);
  while (true) {
    long prod = 1;
    for (int v : t) prod *= v + 1;
    if (prod <= n + 1) out.insert(t);
    int k = 0;
    while (k < d && ++t[static_cast<std::size_t>(k)] > n) t[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  return out;
}

// Gauss-Legendre nodes and weights (sum of weights = 2) by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

TEST(HyperbolicCross, OneDimensionEqualsTotalDegree) {
  const MultiIndexSet s = hyperbolic_cross_indices(1, 3);
  ASSERT_EQ(s.size(), 4u);
  for (int j = 0; j < 4; ++j) EXPECT_EQ(s[static_cast<std::size_t>(j)], std::vector<int>{j});
}

TEST(HyperbolicCross, TwoDimensionsOrderTwo) {
  const MultiIndexSet s = hyperbolic_cross_indices(2, 2);
  const std::set<std::vector<int>> got(s.indices().begin(), s.indices().end());
  const std::set<std::vector<int>> want{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}};
  EXPECT_EQ(got, want);
}

TEST(HyperbolicCross, FourDimensionsOrderThreeHasNineteen) {
  EXPECT_EQ(hyperbolic_cross_indices(4, 3).size(), 19u);
}

TEST(HyperbolicCross, MatchesBruteForce) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 6; ++n) {
      const MultiIndexSet s = hyperbolic_cross_indices(d, n);
      const std::set<std::vector<int>> got(s.indices().begin(), s.indices().end());
      EXPECT_EQ(got.size(), s.size()) << "duplicates at d=" << d << " n=" << n;
      EXPECT_EQ(got, brute_force_hc(d, n)) << "d=" << d << " n=" << n;
    }
  }
}

TEST(HyperbolicCross, DownwardClosed) {
  for (int d = 1; d <= 4; ++d) {
    const MultiIndexSet s = hyperbolic_cross_indices(d, 6);
    for (const auto& idx : s.indices()) {
      for (int k = 0; k < d; ++k) {
        if (idx[static_cast<std::size_t>(k)] == 0) continue;
        auto lower = idx;
        --lower[static_cast<std::size_t>(k)];
        EXPECT_TRUE(s.contains(lower));
      }
    }
  }
}

TEST(HyperbolicCross, GradedOrderConstantFirst) {
  const MultiIndexSet s = hyperbolic_cross_indices(3, 5);
  EXPECT_EQ(s[0], (std::vector<int>{0, 0, 0}));
  for (std::size_t j = 1; j < s.size(); ++j) {
    int a = 0, b = 0;
    for (int v : s[j - 1]) a += v;
    for (int v : s[j]) b += v;
    EXPECT_LE(a, b);
    if (a == b) {
      EXPECT_GT(s[j - 1], s[j]);
    }
  }
}

TEST(HyperbolicCross, CapRaisesResourceLimit) {
  EXPECT_THROW(hyperbolic_cross_indices(3, 40, 20), ResourceLimit);
  EXPECT_THROW(total_degree_indices(10, 10, 100), ResourceLimit);
}

TEST(TotalDegree, CountIsBinomial) {
  EXPECT_EQ(total_degree_indices(2, 4).size(), 15u);
  EXPECT_EQ(total_degree_indices(3, 3).size(), 20u);
  EXPECT_EQ(make_index_set(Truncation::total_degree, 1, 5).size(), 6u);
}

TEST(Legendre, Examples) {
  EXPECT_EQ(eval_legendre_1d(0, 0.37), 1.0);
  EXPECT_EQ(eval_legendre_1d(1, 0.0), 0.0);
  EXPECT_NEAR(eval_legendre_1d(2, 1.0), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(eval_legendre_1d(3, 0.5), std::sqrt(7.0) * (5 * 0.125 - 3 * 0.5) / 2, 1e-14);
}

TEST(Legendre, OrthonormalUnderGaussQuadrature) {
  std::vector<double> x, w;
  gauss_legendre(20, x, w);
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += w[i] * 0.5 * eval_legendre_1d(a, x[i]) * eval_legendre_1d(b, x[i]);
      }
      EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12) << a << "," << b;
    }
  }
}

TEST(BasisMatrix, ConstantColumn) {
  const MultiIndexSet s(1, 0, {{0}});
  Points p(2, 1);
  p << 0.3, -0.7;
  const Matrix m = eval_basis_matrix(s, p, UniformBox::symmetric(1));
  EXPECT_EQ(m.cols(), 1);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(1, 0), 1.0);
}

TEST(BasisMatrix, ProductOfOneDimensionalValues) {
  const MultiIndexSet s(2, 1, {{0, 0}, {1, 0}});
  Points p(1, 2);
  p << 0.5, -0.2;
  const Matrix m = eval_basis_matrix(s, p, UniformBox::symmetric(2));
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_NEAR(m(0, 1), std::sqrt(3.0) * 0.5, 1e-15);
}

TEST(BasisMatrix, ShapeAndDeterminism) {
  Engine rng = make_stream(3, StreamTag::custom);
  const Points p = uniform_points(rng, UniformBox::symmetric(2), 100);
  const MultiIndexSet s = hyperbolic_cross_indices(2, 2);
  const Matrix a = eval_basis_matrix(s, p, UniformBox::symmetric(2));
  const Matrix b = eval_basis_matrix(s, p, UniformBox::symmetric(2));
  EXPECT_EQ(a.rows(), 100);
  EXPECT_EQ(a.cols(), 5);
  EXPECT_TRUE((a.array() == b.array()).all());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double want = eval_legendre_1d(s[j][0], p(i, 0)) * eval_legendre_1d(s[j][1], p(i, 1));
      EXPECT_NEAR(a(i, static_cast<Eigen::Index>(j)), want, 1e-14);
    }
  }
}

TEST(BasisMatrix, OutsideBoxIsDomainViolation) {
  Points p(1, 1);
  p << 1.0001;
  EXPECT_THROW(eval_basis_matrix(hyperbolic_cross_indices(1, 2), p, UniformBox::symmetric(1)),
               DomainViolation);
}

TEST(BasisMatrix, GeneralBoxMapsToCanonical) {
  Vector lo(1), hi(1);
  lo << 2.0;
  hi << 6.0;
  const UniformBox box(lo, hi);
  Points p(1, 1);
  p << 5.0;  // canonical 0.5
  const Matrix m = eval_basis_matrix(hyperbolic_cross_indices(1, 2), p, box);
  EXPECT_NEAR(m(0, 2), eval_legendre_1d(2, 0.5), 1e-14);
}

TEST(UniformBox, RejectsInvertedBounds) {
  Vector lo(1), hi(1);
  lo << 1.0;
  hi << 1.0;
  EXPECT_THROW(UniformBox(lo, hi), Error);
  EXPECT_TRUE(UniformBox::symmetric(3).is_canonical());
  EXPECT_DOUBLE_EQ(UniformBox::symmetric(3).volume(), 8.0);
}
