#include "glhs/simd/kernels.hpp"

#include <cmath>
#include <vector>

namespace glhs::simd {

const LegendreConstants& legendre_constants() {
  static const LegendreConstants constants = [] {
    LegendreConstants c{};
    for (int j = 0; j <= kMaxKernelDegree; ++j) {
      c.a[j] = static_cast<double>(2 * j + 1) / static_cast<double>(j + 1);
      c.b[j] = static_cast<double>(j) / static_cast<double>(j + 1);
      c.s[j] = std::sqrt(static_cast<double>(2 * j + 1));
    }
    return c;
  }();
  return constants;
}

namespace {

// Offsets of each axis' block inside the per-point Legendre table.
std::vector<std::size_t> table_offsets(const ExpansionView& view) {
  std::vector<std::size_t> offsets(view.dim + 1, 0);
  for (int k = 0; k < view.dim; ++k) {
    offsets[k + 1] = offsets[k] + static_cast<std::size_t>(view.max_degrees[k]) + 1;
  }
  return offsets;
}

void fill_table(const ExpansionView& view, const std::vector<std::size_t>& offsets,
                const double* x, std::size_t ld, std::size_t i, double* table) {
  const auto& c = legendre_constants();
  for (int k = 0; k < view.dim; ++k) {
    const double xi = x[k * ld + i];
    double* row = table + offsets[k];
    const int deg = view.max_degrees[k];
    double prev = 1.0;
    double cur = xi;
    row[0] = 1.0;
    if (deg >= 1) row[1] = cur * c.s[1];
    for (int j = 1; j < deg; ++j) {
      const double next = (c.a[j] * xi) * cur - c.b[j] * prev;
      prev = cur;
      cur = next;
      row[j + 1] = next * c.s[j + 1];
    }
  }
}

double basis_product(const ExpansionView& view, const std::vector<std::size_t>& offsets,
                     const double* table, std::size_t j) {
  const int* e = view.exponents + j * view.dim;
  double t = table[offsets[0] + e[0]];
  for (int k = 1; k < view.dim; ++k) {
    t = t * table[offsets[k] + e[k]];
  }
  return t;
}

void eval_expansion_scalar(const ExpansionView& view, const double* x, std::size_t ld,
                           std::size_t n, double* out) {
  const auto offsets = table_offsets(view);
  std::vector<double> table(offsets.back());
  for (std::size_t i = 0; i < n; ++i) {
    fill_table(view, offsets, x, ld, i, table.data());
    double acc = 0.0;
    for (std::size_t j = 0; j < view.size; ++j) {
      acc = acc + view.coefficients[j] * basis_product(view, offsets, table.data(), j);
    }
    out[i] = acc;
  }
}

void eval_basis_scalar(const ExpansionView& view, const double* x, std::size_t ld,
                       std::size_t n, double* out, std::size_t ld_out) {
  const auto offsets = table_offsets(view);
  std::vector<double> table(offsets.back());
  for (std::size_t i = 0; i < n; ++i) {
    fill_table(view, offsets, x, ld, i, table.data());
    for (std::size_t j = 0; j < view.size; ++j) {
      out[j * ld_out + i] = basis_product(view, offsets, table.data(), j);
    }
  }
}

std::size_t count_nonpositive_scalar(const double* v, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += v[i] <= 0.0 ? 1 : 0;
  }
  return count;
}

std::size_t select_abs_le_scalar(const double* v, std::size_t n, double eta,
                                 std::size_t* out) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(v[i]) <= eta) out[count++] = i;
  }
  return count;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{
      "scalar",
      &eval_expansion_scalar,
      &eval_basis_scalar,
      &count_nonpositive_scalar,
      &select_abs_le_scalar,
  };
  return set;
}

}  // namespace glhs::simd
