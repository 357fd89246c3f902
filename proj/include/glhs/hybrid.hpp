#pragma once

#include "glhs/regression.hpp"

#include <span>
#include <vector>

namespace glhs {

struct HybridLayer {
  double threshold;  // eta_{l-1}: the layer replaces values with |v| <= threshold
  PceSurrogate local;
};

/// Global surrogate refined by a chain of local surrogates. Evaluation:
///   v <- global(x); for each layer in order, if |v| <= threshold then v <- local(x).
class HybridSurrogate {
public:
  explicit HybridSurrogate(PceSurrogate global);

  const PceSurrogate& global() const { return global_; }
  const std::vector<HybridLayer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  const UniformBox& box() const { return global_.box(); }

  /// Throws Error unless threshold > 0 and the local surrogate lives on the same box.
  void add_layer(double threshold, PceSurrogate local);

  double operator()(std::span<const double> x) const;
  void evaluate(const Points& x, std::span<double> out) const;
  Vector evaluate(const Points& x) const;

  /// Applies layers [first, depth()) to values already holding the chain of
  /// depth `first` at `x`.
  void refine(const Points& x, std::span<double> values, std::size_t first) const;

  /// Chain restricted to its first `depth` layers.
  HybridSurrogate truncated(std::size_t depth) const;

private:
  PceSurrogate global_;
  std::vector<HybridLayer> layers_;
};

/// Direct recursive form g^(l)(x) = g_L^(l)(x) if |g^(l-1)(x)| <= eta_{l-1},
/// else g^(l-1)(x); point by point, no batching.
double evaluate_recursive(const HybridSurrogate& chain, std::span<const double> x,
                          std::size_t depth);

}  // namespace glhs
