#include "glhs/error.hpp"
#include "glhs/estimators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glhs;

namespace {

BatchFunction constant(double c) {
  return [c](const Points&, std::span<double> out) {
    for (double& v : out) v = c;
  };
}

BatchFunction first_coordinate() {
  return [](const Points& x, std::span<double> out) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = x(i, 0);
  };
}

// True limit state: a circle; surrogate: a slightly shifted circle.
LimitState circle_truth() {
  return LimitState::pointwise("circle", 2, [](std::span<const double> x) {
    return x[0] * x[0] + x[1] * x[1] - 0.5;
  });
}

BatchFunction circle_surrogate() {
  return [](const Points& x, std::span<double> out) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double a = x(i, 0) - 0.05, b = x(i, 1);
      out[static_cast<std::size_t>(i)] = a * a + b * b - 0.48;
    }
  };
}

}  // namespace

TEST(MonteCarlo, ConstantLimitStates) {
  const UniformStream s(UniformBox::symmetric(2), 1, StreamTag::monte_carlo, 0, 1000);
  EXPECT_EQ(mc_failure_probability(constant(1.0), 5000, s).pf, 0.0);
  EXPECT_EQ(mc_failure_probability(constant(-1.0), 5000, s).pf, 1.0);
  EXPECT_EQ(mc_failure_probability(constant(0.0), 5000, s).failures, 5000u);
}

TEST(MonteCarlo, LinearLimitStateWithinThreeSigma) {
  const UniformStream s(UniformBox::symmetric(1), 2, StreamTag::monte_carlo);
  const std::size_t m = 1'000'000;
  const auto est = mc_failure_probability(first_coordinate(), m, s);
  EXPECT_NEAR(est.pf, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(m)));
}

TEST(MonteCarlo, ThreadCountDoesNotChangeCount) {
  const UniformStream s(UniformBox::symmetric(2), 3, StreamTag::monte_carlo, 0, 4096);
  const auto g = circle_truth();
  const auto a = mc_failure_probability(g.uncounted(), 100'003, s, 1);
  const auto b = mc_failure_probability(g.uncounted(), 100'003, s, 4);
  EXPECT_EQ(a.failures, b.failures);
}

TEST(NonIterative, FullBufferEqualsMonteCarlo) {
  const UniformStream s(UniformBox::symmetric(2), 4, StreamTag::non_iterative, 0, 5000);
  const LimitState g = circle_truth();
  const std::size_t m = 20'000;
  const auto ni = non_iterative_pf(circle_surrogate(), g, 1e6, s, m);
  const auto mc = mc_failure_probability(g.uncounted(), m, s);
  EXPECT_EQ(ni.pf, mc.pf);
  EXPECT_EQ(ni.evaluations, m);
  EXPECT_EQ(g.calls(), m);
}

TEST(NonIterative, BudgetStopsAtBudget) {
  const UniformStream s(UniformBox::symmetric(2), 5, StreamTag::non_iterative, 0, 1000);
  const LimitState g = circle_truth();
  const auto ni = non_iterative_pf(circle_surrogate(), g, 0.05, s, 1'000'000, 40);
  EXPECT_EQ(ni.evaluations, 40u);
  EXPECT_EQ(g.calls(), 40u);
  EXPECT_LT(ni.samples, 1'000'000u);
  EXPECT_THROW(non_iterative_pf(circle_surrogate(), g, 1e-9, s, 1000, 5), Starvation);
}

TEST(NonIterative, OutsideBufferUsesSurrogate) {
  const UniformStream s(UniformBox::symmetric(1), 6, StreamTag::non_iterative);
  const LimitState never = LimitState::pointwise("never", 1, [](std::span<const double>) { return 1.0; });
  // Surrogate x with a tiny buffer: failures come from x < -eta only.
  const auto ni = non_iterative_pf(first_coordinate(), never, 1e-3, s, 100'000);
  EXPECT_NEAR(ni.pf, 0.4995, 0.005);
}

TEST(IterativeLi, ExhaustedGroupsEqualMonteCarlo) {
  const UniformStream s(UniformBox::symmetric(2), 7, StreamTag::iterative_li, 0, 3000);
  const LimitState g = circle_truth();
  const Points x = s.head(10'000);
  const auto li = iterative_li_pf(circle_surrogate(), g, x, 100, 0.0);
  const auto mc = mc_failure_probability(g.uncounted(), 10'000, s);
  EXPECT_EQ(li.pf, mc.pf);
  EXPECT_EQ(li.evaluations, 10'000u);
  EXPECT_EQ(li.groups, 100u);
  EXPECT_FALSE(li.converged);
}

TEST(IterativeLi, StopsWhenGroupChangesNothing) {
  // Surrogate equals the truth: the first group changes nothing.
  const UniformStream s(UniformBox::symmetric(1), 8, StreamTag::iterative_li);
  const LimitState g = LimitState(std::string("x"), 1, first_coordinate());
  const Points x = s.head(1000);
  const auto li = iterative_li_pf(first_coordinate(), g, x, 10, 1e-12);
  EXPECT_TRUE(li.converged);
  EXPECT_EQ(li.groups, 1u);
  EXPECT_EQ(li.evaluations, 10u);
}

TEST(IterativeLi, GroupCap) {
  const UniformStream s(UniformBox::symmetric(2), 9, StreamTag::iterative_li);
  const Points x = s.head(1000);
  const auto li = iterative_li_pf(circle_surrogate(), circle_truth(), x, 10, 0.0, 3);
  EXPECT_EQ(li.groups, 3u);
  EXPECT_EQ(li.history.size(), 3u);
}

TEST(Quantile, NearestRankExamples) {
  EXPECT_EQ(empirical_quantile_threshold({5, 1, 4, 2, 3}, 0.5), 3.0);
  EXPECT_EQ(empirical_quantile_threshold({5, 1, 4, 2, 3}, 0.99), 5.0);
  EXPECT_EQ(empirical_quantile_threshold({5, 1, 4, 2, 3}, 0.2), 1.0);
  EXPECT_EQ(empirical_quantile_threshold({10, 20, 30, 40}, 0.25), 10.0);
  EXPECT_THROW(empirical_quantile_threshold({}, 0.5), Error);
  EXPECT_THROW(empirical_quantile_threshold({1.0}, 1.0), Error);
}

TEST(Quantile, UniformNinetyNinthPercentile) {
  Engine rng = make_stream(10, StreamTag::custom);
  std::vector<double> v(1'000'000);
  for (double& x : v) x = uniform01(rng);
  EXPECT_NEAR(empirical_quantile_threshold(v, 0.99), 0.99, 0.001);
}

TEST(Quantile, LimitStateFailsAboveThreshold) {
  const LimitState g = quantile_limit_state("q", 1, first_coordinate(), 0.5);
  Points x(2, 1);
  x << 0.4, 0.6;
  const Vector v = g.evaluate(x);
  EXPECT_GT(v[0], 0.0);
  EXPECT_LT(v[1], 0.0);
}

TEST(Summary, SampleStandardDeviation) {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(summarize({0.1, 0.1, 0.1}).stddev, 0.0);
  EXPECT_EQ(summarize({0.3}).stddev, 0.0);
}
