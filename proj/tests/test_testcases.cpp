#include "glhs/error.hpp"
#include "glhs/testcases.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glhs;

TEST(TestCases, OneDimensionalValues) {
  EXPECT_DOUBLE_EQ(g1d(0.0), 3.0);
  EXPECT_NEAR(g1d(1.0), 3.1875 * std::exp(-1.0) - 2.0, 1e-14);
  EXPECT_NEAR(g1d(1.0), -0.827384, 1e-6);
}

TEST(TestCases, TwoDimensionalValues) {
  EXPECT_DOUBLE_EQ(g2d(0.0, 0.0), 1.0);
  EXPECT_NEAR(g2d_as_printed(1.0, 1.0), 2.77015, 1e-5);
  EXPECT_NEAR(g2d(1.0, 1.0), 4.27015, 1e-5);
  EXPECT_NEAR(g2d(-1.0, -1.0), 0.270151, 1e-6);
}

TEST(TestCases, OneDimensionalHasSingleRoot) {
  int changes = 0;
  double prev = g1d(-1.0);
  for (int i = 1; i <= 20000; ++i) {
    const double v = g1d(-1.0 + 2.0 * i / 20000.0);
    changes += (prev > 0) != (v > 0);
    prev = v;
  }
  EXPECT_EQ(changes, 1);
  EXPECT_GT(g1d(-1.0), 0.0);
  EXPECT_LT(g1d(1.0), 0.0);
}

TEST(TestCases, AsPrintedNeverFails) {
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      EXPECT_GT(g2d_as_printed(-1.0 + i / 100.0, -1.0 + j / 100.0), 0.0);
    }
  }
}

TEST(TestCases, CatalogAndReferenceConfigs) {
  EXPECT_EQ(catalog().size(), 4u);
  const auto c1 = reference_config("case_1d");
  EXPECT_EQ(c1.dim, 1);
  EXPECT_EQ(c1.grid_points, 10'000u);
  EXPECT_EQ(c1.initial_samples, 5u);
  EXPECT_EQ(c1.global_order, 2);
  EXPECT_EQ(c1.local_max_order, 3);
  EXPECT_EQ(c1.local_samples, 6u);
  EXPECT_DOUBLE_EQ(c1.alpha, 0.8);
  EXPECT_DOUBLE_EQ(reference_config("case_1d_conservative").conservativeness, 2.0);
  const auto c2 = reference_config("case_2d");
  EXPECT_EQ(c2.grid_points, 50'000u);
  EXPECT_EQ(c2.initial_samples, 40u);
  EXPECT_EQ(c2.global_order, 4);
  EXPECT_EQ(c2.local_samples, 17u);
  EXPECT_DOUBLE_EQ(c2.alpha, 0.5);
  for (const auto& tc : catalog()) EXPECT_TRUE(validate(tc.config).empty()) << tc.name;
}

TEST(TestCases, UnknownNameIsLookupError) {
  EXPECT_THROW(find_case("case_3d"), LookupError);
}

TEST(TestCases, LimitStateCountsCalls) {
  const LimitState g = make_limit_state(find_case("case_2d"));
  Points x(3, 2);
  x << 0, 0, 1, 1, -1, -1;
  const Vector v = g.evaluate(x);
  EXPECT_EQ(g.calls(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  Vector w(3);
  g.uncounted()(x, std::span<double>(w.data(), 3));
  EXPECT_EQ(g.calls(), 3u);
  EXPECT_EQ(g.fresh_counter().calls(), 0u);
}
