#pragma once

// Data-parallel inner loops: batched Legendre-expansion evaluation and the
// threshold scans used by the estimators. Every kernel has a scalar reference
// implementation; vector variants must reproduce it bit for bit, which is why
// the build disables FMA contraction and the vector code mirrors the scalar
// operation order exactly.

#include <cstddef>
#include <string_view>

namespace glhs::simd {

/// Non-owning view of a tensor Legendre expansion in canonical coordinates.
struct ExpansionView {
  int dim = 0;
  std::size_t size = 0;             // number of basis functions
  const int* exponents = nullptr;   // size * dim, row-major
  const int* max_degrees = nullptr; // dim entries
  const double* coefficients = nullptr;  // size entries (eval_expansion only)
};

/// Coordinates are column-major: coordinate k of point i is x[k * ld + i].
struct KernelSet {
  std::string_view name;

  /// out[i] = sum_j c_j * prod_k L_{e_jk}(x_ik)
  void (*eval_expansion)(const ExpansionView& view, const double* x,
                         std::size_t ld, std::size_t n, double* out);

  /// out[j * ld_out + i] = prod_k L_{e_jk}(x_ik)
  void (*eval_basis)(const ExpansionView& view, const double* x, std::size_t ld,
                     std::size_t n, double* out, std::size_t ld_out);

  /// Number of entries with v <= 0.
  std::size_t (*count_nonpositive)(const double* v, std::size_t n);

  /// Writes the positions with |v| <= eta into `out` (capacity n), ascending;
  /// returns how many were written.
  std::size_t (*select_abs_le)(const double* v, std::size_t n, double eta,
                               std::size_t* out);
};

const KernelSet& scalar_kernels();

/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

/// Kernel set used by the library. Chosen once: AVX2 when available unless
/// the environment variable GLHS_SIMD is set to "scalar".
const KernelSet& active_kernels();

/// Overrides the active set (tests and benchmarks). Pass nullptr to restore
/// automatic selection.
void force_kernels(const KernelSet* kernels);

/// Largest per-axis degree the kernels accept.
inline constexpr int kMaxKernelDegree = 63;

/// Recurrence constants shared by every variant:
/// P_{j+1} = (a_j * x) * P_j - b_j * P_{j-1}, normalized by s_j = sqrt(2j+1).
struct LegendreConstants {
  double a[kMaxKernelDegree + 1];
  double b[kMaxKernelDegree + 1];
  double s[kMaxKernelDegree + 1];
};
const LegendreConstants& legendre_constants();

}  // namespace glhs::simd
