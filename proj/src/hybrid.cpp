#include "glhs/hybrid.hpp"

#include "glhs/error.hpp"
#include "glhs/simd/kernels.hpp"

#include <cmath>

namespace glhs {

HybridSurrogate::HybridSurrogate(PceSurrogate global) : global_(std::move(global)) {}

void HybridSurrogate::add_layer(double threshold, PceSurrogate local) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error("HybridSurrogate: layer threshold must be positive and finite");
  }
  if (!(local.box() == global_.box())) {
    throw Error("HybridSurrogate: local surrogate defined on a different box");
  }
  layers_.push_back({threshold, std::move(local)});
}

double HybridSurrogate::operator()(std::span<const double> x) const {
  return evaluate_recursive(*this, x, layers_.size());
}

void HybridSurrogate::evaluate(const Points& x, std::span<double> out) const {
  global_.evaluate(x, out);
  refine(x, out, 0);
}

Vector HybridSurrogate::evaluate(const Points& x) const {
  Vector out(x.rows());
  evaluate(x, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

void HybridSurrogate::refine(const Points& x, std::span<double> values, std::size_t first) const {
  const auto n = static_cast<std::size_t>(x.rows());
  if (values.size() != n) throw Error("HybridSurrogate::refine: value count mismatch");
  if (first > layers_.size()) throw Error("HybridSurrogate::refine: layer out of range");
  if (n == 0) return;
  const simd::KernelSet& k = simd::active_kernels();
  std::vector<std::size_t> sel(n);
  for (std::size_t l = first; l < layers_.size(); ++l) {
    const std::size_t count = k.select_abs_le(values.data(), n, layers_[l].threshold, sel.data());
    if (count == 0) continue;
    Points sub(static_cast<Eigen::Index>(count), x.cols());
    for (std::size_t i = 0; i < count; ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(sel[i]));
    }
    std::vector<double> local(count);
    layers_[l].local.evaluate(sub, local);
    for (std::size_t i = 0; i < count; ++i) values[sel[i]] = local[i];
  }
}

HybridSurrogate HybridSurrogate::truncated(std::size_t depth) const {
  if (depth > layers_.size()) throw Error("HybridSurrogate::truncated: depth exceeds chain");
  HybridSurrogate out(global_);
  out.layers_.assign(layers_.begin(), layers_.begin() + static_cast<std::ptrdiff_t>(depth));
  return out;
}

double evaluate_recursive(const HybridSurrogate& chain, std::span<const double> x,
                          std::size_t depth) {
  if (depth == 0) return chain.global()(x);
  const double prev = evaluate_recursive(chain, x, depth - 1);
  const HybridLayer& layer = chain.layers()[depth - 1];
  return std::fabs(prev) <= layer.threshold ? layer.local(x) : prev;
}

}  // namespace glhs
