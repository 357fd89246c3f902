#pragma once

#include <Eigen/Core>

#include <functional>
#include <span>

namespace glhs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Point set, one row per point. Column-major storage keeps each coordinate
/// contiguous, which is the layout the batch kernels consume.
using Points = Eigen::MatrixXd;

/// Evaluates a scalar function at every row of `x`, writing into `out`
/// (`out.size() == x.rows()`).
using BatchFunction = std::function<void(const Points& x, std::span<double> out)>;

}  // namespace glhs
