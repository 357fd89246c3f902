#include "glhs/error.hpp"
#include "glhs/hybrid.hpp"
#include "glhs/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glhs;

namespace {

PceSurrogate random_surrogate(int dim, int order, std::uint64_t seed, double scale) {
  Engine rng = make_stream(seed, StreamTag::custom);
  const MultiIndexSet set = hyperbolic_cross_indices(dim, order);
  Vector c(static_cast<Eigen::Index>(set.size()));
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = scale * (2.0 * uniform01(rng) - 1.0);
  return PceSurrogate(set, c, UniformBox::symmetric(dim));
}

HybridSurrogate three_layer_chain() {
  HybridSurrogate chain(random_surrogate(2, 3, 1, 1.0));
  chain.add_layer(0.5, random_surrogate(2, 4, 2, 0.3));
  chain.add_layer(0.2, random_surrogate(2, 2, 3, 0.1));
  chain.add_layer(0.05, random_surrogate(2, 3, 4, 0.05));
  return chain;
}

}  // namespace

TEST(Hybrid, PiecewiseIdentityIsBitExact) {
  HybridSurrogate chain(random_surrogate(2, 3, 5, 1.0));
  const PceSurrogate local = random_surrogate(2, 2, 6, 1.0);
  const double eta = 0.3;
  chain.add_layer(eta, local);
  Engine rng = make_stream(7, StreamTag::custom);
  const Points x = uniform_points(rng, chain.box(), 5000);
  const Vector g = chain.global().evaluate(x);
  const Vector l = local.evaluate(x);
  const Vector h = chain.evaluate(x);
  std::size_t inside = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (std::fabs(g[i]) <= eta) {
      EXPECT_EQ(h[i], l[i]);
      ++inside;
    } else {
      EXPECT_EQ(h[i], g[i]);
    }
  }
  EXPECT_GT(inside, 0u);
  EXPECT_LT(inside, 5000u);
}

TEST(Hybrid, BatchMatchesRecursiveForm) {
  const HybridSurrogate chain = three_layer_chain();
  Engine rng = make_stream(8, StreamTag::custom);
  const Points x = uniform_points(rng, chain.box(), 1000);
  const Vector batch = chain.evaluate(x);
  double row[2];
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    row[0] = x(i, 0);
    row[1] = x(i, 1);
    EXPECT_EQ(batch[i], evaluate_recursive(chain, row, chain.depth()));
    EXPECT_EQ(batch[i], chain(row));
  }
}

TEST(Hybrid, RefineFromCachedDepth) {
  const HybridSurrogate chain = three_layer_chain();
  Engine rng = make_stream(9, StreamTag::custom);
  const Points x = uniform_points(rng, chain.box(), 1000);
  Vector v = chain.truncated(1).evaluate(x);
  chain.refine(x, std::span<double>(v.data(), 1000), 1);
  EXPECT_TRUE((v.array() == chain.evaluate(x).array()).all());
}

TEST(Hybrid, TruncatedDropsLayers) {
  const HybridSurrogate chain = three_layer_chain();
  EXPECT_EQ(chain.truncated(0).depth(), 0u);
  EXPECT_EQ(chain.truncated(2).depth(), 2u);
  Engine rng = make_stream(10, StreamTag::custom);
  const Points x = uniform_points(rng, chain.box(), 100);
  EXPECT_TRUE((chain.truncated(0).evaluate(x).array() == chain.global().evaluate(x).array()).all());
}

TEST(Hybrid, RejectsInvalidLayers) {
  HybridSurrogate chain(random_surrogate(2, 2, 11, 1.0));
  EXPECT_THROW(chain.add_layer(0.0, random_surrogate(2, 2, 12, 1.0)), Error);
  EXPECT_THROW(chain.add_layer(std::nan(""), random_surrogate(2, 2, 12, 1.0)), Error);
  EXPECT_THROW(chain.add_layer(0.1, random_surrogate(1, 2, 12, 1.0)), Error);
}
