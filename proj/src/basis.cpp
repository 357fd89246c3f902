#include "glhs/basis.hpp"

#include "glhs/error.hpp"
#include "glhs/simd/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace glhs {

UniformBox::UniformBox(Vector lower, Vector upper)
  : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() < 1 || lower_.size() != upper_.size()) {
    throw Error("UniformBox: bounds must be non-empty and of equal length");
  }
  canonical_ = true;
  for (Eigen::Index j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j])) {
      throw Error("UniformBox: lower bound must be below upper bound on every axis");
    }
    canonical_ = canonical_ && lower_[j] == -1.0 && upper_[j] == 1.0;
  }
}

UniformBox UniformBox::symmetric(int dim) {
  if (dim < 1) throw Error("UniformBox: dimension must be at least 1");
  return UniformBox(Vector::Constant(dim, -1.0), Vector::Constant(dim, 1.0));
}

double UniformBox::volume() const { return (upper_ - lower_).prod(); }

bool UniformBox::contains(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != lower_.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lower_[j] && x[j] <= upper_[j])) return false;
  }
  return true;
}

bool UniformBox::contains_row(const Points& x, Eigen::Index row) const {
  for (Eigen::Index j = 0; j < lower_.size(); ++j) {
    const double v = x(row, j);
    if (!(v >= lower_[j] && v <= upper_[j])) return false;
  }
  return true;
}

void UniformBox::require_contains(const Points& x) const {
  if (x.cols() != lower_.size()) {
    std::ostringstream msg;
    msg << "point dimension " << x.cols() << " does not match box dimension " << lower_.size();
    throw DomainViolation(msg.str());
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (!contains_row(x, i)) {
      std::ostringstream msg;
      msg << "point " << i << " (" << x.row(i) << ") lies outside the input box";
      throw DomainViolation(msg.str());
    }
  }
}

Points UniformBox::to_canonical(const Points& x) const {
  if (canonical_) return x;
  Points out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mid = lower_[j] + upper_[j];
    const double width = upper_[j] - lower_[j];
    out.col(j) = ((2.0 * x.col(j).array() - mid) / width).matrix();
  }
  return out;
}

bool UniformBox::operator==(const UniformBox& other) const {
  return lower_ == other.lower_ && upper_ == other.upper_;
}

MultiIndexSet::MultiIndexSet(int dim, int order, std::vector<std::vector<int>> indices)
  : dim_(dim), order_(order), indices_(std::move(indices)), max_degrees_(dim, 0) {
  flat_.reserve(indices_.size() * static_cast<std::size_t>(dim_));
  for (const auto& idx : indices_) {
    if (static_cast<int>(idx.size()) != dim_) {
      throw Error("MultiIndexSet: index length does not match dimension");
    }
    for (int k = 0; k < dim_; ++k) {
      if (idx[k] < 0) throw Error("MultiIndexSet: negative exponent");
      if (idx[k] > simd::kMaxKernelDegree) {
        throw ResourceLimit("MultiIndexSet: per-axis degree exceeds kernel limit");
      }
      max_degrees_[k] = std::max(max_degrees_[k], idx[k]);
      flat_.push_back(idx[k]);
    }
  }
}

bool MultiIndexSet::contains(std::span<const int> index) const {
  return std::any_of(indices_.begin(), indices_.end(), [&](const std::vector<int>& idx) {
    return std::equal(idx.begin(), idx.end(), index.begin(), index.end());
  });
}

namespace {

// Graded lexicographic: total degree first, then larger leading exponents first.
bool graded_before(const std::vector<int>& a, const std::vector<int>& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void check_args(int dim, int order) {
  if (dim < 1) throw Error("index set: dimension must be at least 1");
  if (order < 0) throw Error("index set: order must be non-negative");
}

[[noreturn]] void cap_exceeded(const char* kind, int dim, int order, std::size_t cap) {
  std::ostringstream msg;
  msg << kind << " index set for d=" << dim << ", n=" << order
      << " exceeds the cap of " << cap << " basis functions";
  throw ResourceLimit(msg.str());
}

// Enumerates tuples whose coordinates satisfy a monotone admissibility test,
// pruning as soon as a partial tuple fails.
template <class Admissible>
std::vector<std::vector<int>> enumerate(int dim, int max_degree, std::size_t cap,
                                        Admissible admissible, const char* kind, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(dim, 0);
  auto rec = [&](auto&& self, int axis) -> void {
    if (axis == dim) {
      if (out.size() >= cap) cap_exceeded(kind, dim, order, cap);
      out.push_back(current);
      return;
    }
    for (int e = 0; e <= max_degree; ++e) {
      current[axis] = e;
      if (!admissible(current, axis)) break;
      self(self, axis + 1);
    }
    current[axis] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), graded_before);
  return out;
}

}  // namespace

MultiIndexSet hyperbolic_cross_indices(int dim, int order, std::size_t cap) {
  check_args(dim, order);
  const long long bound = static_cast<long long>(order) + 1;
  auto admissible = [bound](const std::vector<int>& t, int axis) {
    long long prod = 1;
    for (int k = 0; k <= axis; ++k) {
      prod *= static_cast<long long>(t[k]) + 1;
      if (prod > bound) return false;
    }
    return true;
  };
  return MultiIndexSet(dim, order,
                       enumerate(dim, order, cap, admissible, "hyperbolic-cross", order));
}

MultiIndexSet total_degree_indices(int dim, int order, std::size_t cap) {
  check_args(dim, order);
  auto admissible = [order](const std::vector<int>& t, int axis) {
    int sum = 0;
    for (int k = 0; k <= axis; ++k) sum += t[k];
    return sum <= order;
  };
  return MultiIndexSet(dim, order,
                       enumerate(dim, order, cap, admissible, "total-degree", order));
}

MultiIndexSet make_index_set(Truncation truncation, int dim, int order, std::size_t cap) {
  return truncation == Truncation::hyperbolic_cross ? hyperbolic_cross_indices(dim, order, cap)
                                                    : total_degree_indices(dim, order, cap);
}

double eval_legendre_1d(int order, double x) {
  if (order < 0) throw Error("eval_legendre_1d: order must be non-negative");
  if (order > simd::kMaxKernelDegree) throw ResourceLimit("eval_legendre_1d: order too large");
  const int exponent = order;
  const int max_degree = order;
  const double one = 1.0;
  simd::ExpansionView view{1, 1, &exponent, &max_degree, &one};
  double out = 0.0;
  simd::scalar_kernels().eval_basis(view, &x, 1, 1, &out, 1);
  return out;
}

Matrix eval_basis_matrix(const MultiIndexSet& index_set, const Points& points,
                         const UniformBox& box) {
  if (points.cols() != index_set.dim() || box.dim() != index_set.dim()) {
    throw DomainViolation("eval_basis_matrix: dimension mismatch between points, box and index set");
  }
  box.require_contains(points);
  const Points canonical = box.to_canonical(points);
  Matrix out(points.rows(), static_cast<Eigen::Index>(index_set.size()));
  if (points.rows() == 0) return out;
  simd::ExpansionView view{index_set.dim(), index_set.size(), index_set.flat_exponents().data(),
                           index_set.max_degrees().data(), nullptr};
  simd::active_kernels().eval_basis(view, canonical.data(),
                                    static_cast<std::size_t>(canonical.rows()),
                                    static_cast<std::size_t>(canonical.rows()), out.data(),
                                    static_cast<std::size_t>(out.rows()));
  return out;
}

}  // namespace glhs
