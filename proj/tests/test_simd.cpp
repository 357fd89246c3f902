#include "glhs/basis.hpp"
#include "glhs/random.hpp"
#include "glhs/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <vector>

using namespace glhs;

namespace {

struct Fixture {
  MultiIndexSet set;
  Vector coef;
  Points x;
  simd::ExpansionView view() const {
    return {set.dim(), set.size(), set.flat_exponents().data(), set.max_degrees().data(), coef.data()};
  }
};

Fixture make(int dim, int order, Eigen::Index n, std::uint64_t seed) {
  Engine rng = make_stream(seed, StreamTag::custom);
  Fixture f{hyperbolic_cross_indices(dim, order), {}, uniform_points(rng, UniformBox::symmetric(dim), n)};
  f.coef.resize(static_cast<Eigen::Index>(f.set.size()));
  for (Eigen::Index j = 0; j < f.coef.size(); ++j) f.coef[j] = 2.0 * uniform01(rng) - 1.0;
  return f;
}

bool same_bits(const double* a, const double* b, std::size_t n) {
  return std::memcmp(a, b, n * sizeof(double)) == 0;
}

class SimdEquivalence : public ::testing::Test {
protected:
  void SetUp() override {
    avx2 = simd::avx2_kernels();
    if (avx2 == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable";
  }
  const simd::KernelSet& scalar = simd::scalar_kernels();
  const simd::KernelSet* avx2 = nullptr;
};

}  // namespace

TEST_F(SimdEquivalence, EvalExpansionBitExact) {
  for (Eigen::Index n : {1, 3, 4, 5, 7, 8, 13, 1000, 1003}) {
    for (int dim : {1, 2, 4}) {
      const Fixture f = make(dim, 6, n, static_cast<std::uint64_t>(n * 10 + dim));
      std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
      const auto ld = static_cast<std::size_t>(n);
      scalar.eval_expansion(f.view(), f.x.data(), ld, ld, a.data());
      avx2->eval_expansion(f.view(), f.x.data(), ld, ld, b.data());
      EXPECT_TRUE(same_bits(a.data(), b.data(), a.size())) << "n=" << n << " dim=" << dim;
    }
  }
}

TEST_F(SimdEquivalence, EvalBasisBitExact) {
  for (Eigen::Index n : {1, 6, 9, 257}) {
    const Fixture f = make(3, 8, n, static_cast<std::uint64_t>(n));
    const auto ld = static_cast<std::size_t>(n);
    const std::size_t ld_out = ld + 3;
    std::vector<double> a(ld_out * f.set.size(), 0.0), b(ld_out * f.set.size(), 0.0);
    scalar.eval_basis(f.view(), f.x.data(), ld, ld, a.data(), ld_out);
    avx2->eval_basis(f.view(), f.x.data(), ld, ld, b.data(), ld_out);
    EXPECT_TRUE(same_bits(a.data(), b.data(), a.size())) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, HighDegreeBitExact) {
  const Fixture f = make(1, simd::kMaxKernelDegree, 37, 99);
  std::vector<double> a(37), b(37);
  scalar.eval_expansion(f.view(), f.x.data(), 37, 37, a.data());
  avx2->eval_expansion(f.view(), f.x.data(), 37, 37, b.data());
  EXPECT_TRUE(same_bits(a.data(), b.data(), 37));
}

TEST_F(SimdEquivalence, ThresholdScans) {
  Engine rng = make_stream(5, StreamTag::custom);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 15u, 16u, 17u, 1001u}) {
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * uniform01(rng) - 1.0;
    if (n > 2) {
      v[0] = 0.0;
      v[1] = -0.0;
      v[2] = 0.25;
    }
    EXPECT_EQ(scalar.count_nonpositive(v.data(), n), avx2->count_nonpositive(v.data(), n));
    std::vector<std::size_t> a(n), b(n);
    const std::size_t ka = scalar.select_abs_le(v.data(), n, 0.25, a.data());
    const std::size_t kb = avx2->select_abs_le(v.data(), n, 0.25, b.data());
    ASSERT_EQ(ka, kb);
    a.resize(ka);
    b.resize(kb);
    EXPECT_EQ(a, b);
  }
}

TEST(SimdScalar, ExpansionMatchesBasisMatrix) {
  const Fixture f = make(2, 5, 50, 7);
  const auto& k = simd::scalar_kernels();
  std::vector<double> out(50);
  k.eval_expansion(f.view(), f.x.data(), 50, 50, out.data());
  const Vector want = eval_basis_matrix(f.set, f.x, UniformBox::symmetric(2)) * f.coef;
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(out[static_cast<std::size_t>(i)], want[i], 1e-12);
}

TEST(SimdScalar, ForceKernelsOverrides) {
  simd::force_kernels(&simd::scalar_kernels());
  EXPECT_EQ(simd::active_kernels().name, simd::scalar_kernels().name);
  simd::force_kernels(nullptr);
  EXPECT_FALSE(simd::active_kernels().name.empty());
}
