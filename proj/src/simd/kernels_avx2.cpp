// AVX2 variants. Four points per register; each lane performs the same
// sequence of multiplies and subtractions as the scalar kernel so the results
// agree bit for bit. Compiled with -mavx2 only (no -mfma).

#include "glhs/simd/kernels.hpp"

#include <immintrin.h>

#include <vector>

namespace glhs::simd {

namespace {

constexpr std::size_t kLanes = 4;

std::vector<std::size_t> table_offsets(const ExpansionView& view) {
  std::vector<std::size_t> offsets(view.dim + 1, 0);
  for (int k = 0; k < view.dim; ++k) {
    offsets[k + 1] = offsets[k] + static_cast<std::size_t>(view.max_degrees[k]) + 1;
  }
  return offsets;
}

void fill_table4(const ExpansionView& view, const std::vector<std::size_t>& offsets,
                 const double* x, std::size_t ld, std::size_t i, __m256d* table) {
  const auto& c = legendre_constants();
  const __m256d one = _mm256_set1_pd(1.0);
  for (int k = 0; k < view.dim; ++k) {
    const __m256d xi = _mm256_loadu_pd(x + k * ld + i);
    __m256d* row = table + offsets[k];
    const int deg = view.max_degrees[k];
    __m256d prev = one;
    __m256d cur = xi;
    row[0] = one;
    if (deg >= 1) row[1] = _mm256_mul_pd(cur, _mm256_set1_pd(c.s[1]));
    for (int j = 1; j < deg; ++j) {
      const __m256d ax = _mm256_mul_pd(_mm256_set1_pd(c.a[j]), xi);
      const __m256d next = _mm256_sub_pd(_mm256_mul_pd(ax, cur),
                                         _mm256_mul_pd(_mm256_set1_pd(c.b[j]), prev));
      prev = cur;
      cur = next;
      row[j + 1] = _mm256_mul_pd(next, _mm256_set1_pd(c.s[j + 1]));
    }
  }
}

inline __m256d basis_product4(const ExpansionView& view,
                              const std::vector<std::size_t>& offsets,
                              const __m256d* table, std::size_t j) {
  const int* e = view.exponents + j * view.dim;
  __m256d t = table[offsets[0] + e[0]];
  for (int k = 1; k < view.dim; ++k) {
    t = _mm256_mul_pd(t, table[offsets[k] + e[k]]);
  }
  return t;
}

// Wrapper so std::vector keeps the vector type's alignment attribute.
struct Lane4 {
  __m256d v;
};

void eval_expansion_avx2(const ExpansionView& view, const double* x, std::size_t ld,
                         std::size_t n, double* out) {
  const auto offsets = table_offsets(view);
  std::vector<Lane4> lanes(offsets.back());
  __m256d* table = &lanes.data()->v;
  std::vector<Lane4> coef(view.size);
  for (std::size_t j = 0; j < view.size; ++j) coef[j].v = _mm256_set1_pd(view.coefficients[j]);

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    fill_table4(view, offsets, x, ld, i, table);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < view.size; ++j) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(coef[j].v, basis_product4(view, offsets, table, j)));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < n) scalar_kernels().eval_expansion(view, x + i, ld, n - i, out + i);
}

void eval_basis_avx2(const ExpansionView& view, const double* x, std::size_t ld,
                     std::size_t n, double* out, std::size_t ld_out) {
  const auto offsets = table_offsets(view);
  std::vector<Lane4> lanes(offsets.back());
  __m256d* table = &lanes.data()->v;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    fill_table4(view, offsets, x, ld, i, table);
    for (std::size_t j = 0; j < view.size; ++j) {
      _mm256_storeu_pd(out + j * ld_out + i, basis_product4(view, offsets, table, j));
    }
  }
  if (i < n) scalar_kernels().eval_basis(view, x + i, ld, n - i, out + i, ld_out);
}

std::size_t count_nonpositive_avx2(const double* v, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d le = _mm256_cmp_pd(_mm256_loadu_pd(v + i), zero, _CMP_LE_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(le)));
  }
  if (i < n) count += scalar_kernels().count_nonpositive(v + i, n - i);
  return count;
}

std::size_t select_abs_le_avx2(const double* v, std::size_t n, double eta,
                               std::size_t* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d limit = _mm256_set1_pd(eta);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d mag = _mm256_andnot_pd(sign, _mm256_loadu_pd(v + i));
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(mag, limit, _CMP_LE_OQ));
    while (mask != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(mask));
      out[count++] = i + static_cast<std::size_t>(lane);
      mask &= mask - 1;
    }
  }
  if (i < n) {
    const std::size_t tail = scalar_kernels().select_abs_le(v + i, n - i, eta, out + count);
    for (std::size_t t = 0; t < tail; ++t) out[count + t] += i;
    count += tail;
  }
  return count;
}

}  // namespace

const KernelSet& avx2_kernel_set() {
  static const KernelSet set{
      "avx2",
      &eval_expansion_avx2,
      &eval_basis_avx2,
      &count_nonpositive_avx2,
      &select_abs_le_avx2,
  };
  return set;
}

}  // namespace glhs::simd
