#pragma once

#include "glhs/types.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace glhs {

/// An expensive ("high-fidelity") response g_T with a call counter. Copies
/// share the counter; fresh_counter() detaches one for per-run accounting.
class LimitState {
public:
  using PointFunction = std::function<double(std::span<const double>)>;

  LimitState(std::string name, int dim, BatchFunction batch)
    : name_(std::move(name)),
      dim_(dim),
      batch_(std::move(batch)),
      calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

  static LimitState pointwise(std::string name, int dim, PointFunction f) {
    return LimitState(std::move(name), dim, [f = std::move(f), dim](const Points& x, std::span<double> out) {
      std::vector<double> row(static_cast<std::size_t>(dim));
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < dim; ++k) row[static_cast<std::size_t>(k)] = x(i, k);
        out[static_cast<std::size_t>(i)] = f(row);
      }
    });
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  void evaluate(const Points& x, std::span<double> out) const {
    calls_->fetch_add(static_cast<std::uint64_t>(x.rows()), std::memory_order_relaxed);
    batch_(x, out);
  }

  Vector evaluate(const Points& x) const {
    Vector out(x.rows());
    evaluate(x, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
    return out;
  }

  /// Evaluation that is not counted, for reference Monte Carlo sweeps.
  const BatchFunction& uncounted() const { return batch_; }

  std::uint64_t calls() const { return calls_->load(std::memory_order_relaxed); }
  void reset_calls() { calls_->store(0, std::memory_order_relaxed); }

  LimitState fresh_counter() const { return LimitState(name_, dim_, batch_); }

private:
  std::string name_;
  int dim_;
  BatchFunction batch_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

}  // namespace glhs
