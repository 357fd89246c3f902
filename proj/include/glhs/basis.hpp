#pragma once

#include "glhs/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace glhs {

/// Axis-aligned input box. The reference problems all live on [-1, 1]^d.
class UniformBox {
public:
  UniformBox(Vector lower, Vector upper);

  /// [-1, 1]^d
  static UniformBox symmetric(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  double volume() const;

  /// True when the box is exactly [-1, 1]^d, so no affine map is needed.
  bool is_canonical() const { return canonical_; }

  bool contains(std::span<const double> x) const;
  bool contains_row(const Points& x, Eigen::Index row) const;

  /// Throws DomainViolation naming the first offending row.
  void require_contains(const Points& x) const;

  /// Affine map of the points onto [-1, 1]^d.
  Points to_canonical(const Points& x) const;

  bool operator==(const UniformBox& other) const;

private:
  Vector lower_;
  Vector upper_;
  bool canonical_ = false;
};

enum class Truncation { hyperbolic_cross, total_degree };

inline constexpr std::size_t kDefaultIndexCap = 10'000;

/// Truncated set of multi-indices, stored in graded lexicographic order:
/// ascending total degree, ties broken by descending first coordinate, then
/// the second, and so on. The constant index is always first.
class MultiIndexSet {
public:
  MultiIndexSet() = default;
  MultiIndexSet(int dim, int order, std::vector<std::vector<int>> indices);

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<int>& operator[](std::size_t j) const { return indices_[j]; }
  const std::vector<std::vector<int>>& indices() const { return indices_; }

  /// Highest exponent used along each axis.
  const std::vector<int>& max_degrees() const { return max_degrees_; }

  /// Exponents flattened row-major, `size() * dim()` entries.
  const std::vector<int>& flat_exponents() const { return flat_; }

  bool contains(std::span<const int> index) const;

  bool operator==(const MultiIndexSet& other) const = default;

private:
  int dim_ = 0;
  int order_ = 0;
  std::vector<std::vector<int>> indices_;
  std::vector<int> max_degrees_;
  std::vector<int> flat_;
};

/// {n : prod_k (n_k + 1) <= order + 1}
MultiIndexSet hyperbolic_cross_indices(int dim, int order,
                                       std::size_t cap = kDefaultIndexCap);

/// {n : sum_k n_k <= order}
MultiIndexSet total_degree_indices(int dim, int order,
                                   std::size_t cap = kDefaultIndexCap);

MultiIndexSet make_index_set(Truncation truncation, int dim, int order,
                             std::size_t cap = kDefaultIndexCap);

/// Legendre polynomial normalized so that the integral of phi_a * phi_b
/// against dx/2 over [-1, 1] is the Kronecker delta.
double eval_legendre_1d(int order, double x);

/// Entry (i, j) is the tensor-product Legendre polynomial of index j at
/// point i. Throws DomainViolation for points outside `box`.
Matrix eval_basis_matrix(const MultiIndexSet& index_set, const Points& points,
                         const UniformBox& box);

}  // namespace glhs
