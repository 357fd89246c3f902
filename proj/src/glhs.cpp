#include "glhs/glhs.hpp"

#include "glhs/error.hpp"
#include "glhs/log.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glhs {

namespace {

std::size_t sampling_rate_rule(std::size_t n) {
  return std::max<std::size_t>(4 * n, n + 1);
}

std::size_t basis_size(const GlhsConfig& config, int order) {
  return make_index_set(config.truncation, config.dim, order, config.index_cap).size();
}

Points rows_of(const Points& x, Eigen::Index first, Eigen::Index count) {
  return x.middleRows(first, count);
}

}  // namespace

std::vector<std::string> validate(const GlhsConfig& c) {
  std::vector<std::string> errors;
  auto need = [&](bool ok, const char* message) {
    if (!ok) errors.emplace_back(message);
  };
  need(c.dim >= 1, "dim must be at least 1");
  need(c.grid_points >= 1, "grid_points must be positive");
  need(c.mc_samples >= 1, "mc_samples must be positive");
  need(c.conservativeness > 0.0 && std::isfinite(c.conservativeness),
       "conservativeness must be positive");
  need(c.alpha > 0.0 && c.alpha <= 1.0, "α must lie in (0, 1]");
  need(c.initial_samples >= 1, "initial_samples must be positive");
  need(c.global_order >= 0, "global_order must be non-negative");
  need(c.local_max_order >= 1, "local_max_order must be at least 1");
  need(c.batch_factor > 1.0, "batch_factor must exceed 1");
  need(c.dense_zone_size >= 1, "dense_zone_size must be positive");
  need(c.rect_padding >= 0.0, "rect_padding must be non-negative");
  need(c.max_iterations >= 0, "max_iterations must be non-negative");
  need(c.cv_folds >= 2, "cv_folds must be at least 2");
  need(c.incremental_tolerance >= 0.0, "incremental_tolerance must be non-negative");
  if (!errors.empty()) return errors;

  try {
    const std::size_t n_global = basis_size(c, c.global_order);
    if (c.initial_samples < n_global) {
      std::ostringstream msg;
      msg << "initial_samples = " << c.initial_samples << " cannot fit the order-" << c.global_order
          << " global basis of " << n_global << " functions";
      errors.push_back(msg.str());
    }
    const std::size_t n_local = basis_size(c, c.local_max_order);
    if (c.local_samples && *c.local_samples < n_local && !c.auto_raise_local_samples) {
      std::ostringstream msg;
      msg << "local_samples = " << *c.local_samples << " is below N(n_max) = " << n_local
          << "; raise it or set auto_raise_local_samples = true";
      errors.push_back(msg.str());
    }
    if (c.dense_zone_size < n_local) {
      std::ostringstream msg;
      msg << "dense_zone_size = " << c.dense_zone_size << " is below N(n_max) = " << n_local;
      errors.push_back(msg.str());
    }
  } catch (const ResourceLimit& e) {
    errors.emplace_back(e.what());
  }
  return errors;
}

std::vector<std::string> warnings(const GlhsConfig& c) {
  std::vector<std::string> out;
  if (c.conservativeness < 1.0) {
    out.emplace_back("conservativeness below 1 shrinks the buffer under the observed residual");
  }
  if (c.dense_zone_size > c.grid_points * 10) {
    out.emplace_back("dense_zone_size is much larger than grid_points");
  }
  return out;
}

std::size_t resolved_local_samples(const GlhsConfig& config) {
  const std::size_t n = basis_size(config, config.local_max_order);
  if (!config.local_samples) return sampling_rate_rule(n);
  if (*config.local_samples < n && config.auto_raise_local_samples) return sampling_rate_rule(n);
  return *config.local_samples;
}

GlobalFit fit_global_surrogate(const LimitState& g, const GlhsConfig& config, Engine& rng) {
  const UniformBox box = config.box();
  const MultiIndexSet index_set =
      make_index_set(config.truncation, config.dim, config.global_order, config.index_cap);
  if (config.initial_samples < index_set.size()) {
    std::ostringstream msg;
    msg << "fit_global_surrogate: " << config.initial_samples << " initial samples; the order-"
        << config.global_order << " basis needs at least " << index_set.size();
    throw InsufficientBudget(msg.str());
  }
  Points x = uniform_points(rng, box, static_cast<Eigen::Index>(config.initial_samples));
  Vector y = g.evaluate(x);
  const Matrix psi = eval_basis_matrix(index_set, x, box);
  LeastSquaresResult fit = least_squares_fit(psi, y);
  return GlobalFit{PceSurrogate(index_set, std::move(fit.coefficients), box), std::move(x),
                   std::move(y)};
}

Eta0 compute_eta0(const Vector& truth, const Vector& surrogate, double c, double alpha) {
  if (truth.size() == 0 || truth.size() != surrogate.size()) {
    throw Error("compute_eta0: need matching, non-empty training values");
  }
  const double cut = alpha * truth.cwiseAbs().maxCoeff();
  Eta0 out;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (std::fabs(truth[i]) <= cut) {
      worst = std::max(worst, std::fabs(truth[i] - surrogate[i]));
      ++out.support;
    }
  }
  if (out.support == 0) {
    out.fallback = true;
    worst = (truth - surrogate).cwiseAbs().maxCoeff();
  }
  out.value = c * worst;
  return out;
}

GlhsDesign prepare_design(const LimitState& g, const GlhsConfig& config, Engine& rng) {
  const auto errors = validate(config);
  if (!errors.empty()) throw Error("invalid configuration: " + errors.front());
  const UniformBox box = config.box();
  Points grid = uniform_points(rng, box, static_cast<Eigen::Index>(config.grid_points));
  GlobalFit global = fit_global_surrogate(g, config, rng);
  const Vector fitted = global.surrogate.evaluate(global.points);
  const Eta0 eta0 = compute_eta0(global.values, fitted, config.conservativeness, config.alpha);
  if (eta0.fallback) {
    log_warn("eta_0: no training point passed the alpha filter; using every training point");
  }
  Vector grid_values = global.surrogate.evaluate(grid);
  return GlhsDesign{config, std::move(grid), std::move(global), eta0, std::move(grid_values)};
}

namespace {

struct LocalFit {
  PceSurrogate surrogate;
  int order;
  std::vector<OrderScore> scores;
  std::size_t used;  // samples evaluated with g_T
};

LocalFit fit_with_order(int order, const Points& x, const Vector& y, const Vector& w,
                        const Points& dense, const GlhsConfig& config) {
  const UniformBox box = config.box();
  const MultiIndexSet index_set =
      make_index_set(config.truncation, config.dim, order, config.index_cap);
  const GridOrthonormalization orth = orthonormalize_on_grid(index_set, dense, box);
  PceSurrogate s = weighted_least_squares_fit(x, y, w, index_set, orth.r, box);
  return LocalFit{std::move(s), order, {}, static_cast<std::size_t>(x.rows())};
}

LocalFit fit_local(const ChristoffelSample& sample, const LimitState& g, const Points& dense,
                   const GlhsConfig& config, Engine& rng, Vector& values) {
  const UniformBox box = config.box();
  CrossValidationOptions cv{config.cv_folds, config.truncation, config.index_cap, 1e-12};

  if (!config.incremental) {
    values = g.evaluate(sample.points);
    CrossValidationResult sel = cross_validate_order(config.local_max_order, sample.points, values,
                                                     sample.weights, dense, box, cv, rng);
    LocalFit fit = fit_with_order(sel.selected_order, sample.points, values, sample.weights, dense,
                                  config);
    fit.scores = std::move(sel.scores);
    return fit;
  }

  // Candidates are evaluated in draw order, one order at a time.
  const auto total = static_cast<std::size_t>(sample.points.rows());
  values.resize(0);
  std::vector<OrderScore> scores;
  for (int order = 1; order <= config.local_max_order; ++order) {
    const std::size_t n = basis_size(config, order);
    const std::size_t want = std::min(total, sampling_rate_rule(n));
    if (want > static_cast<std::size_t>(values.size())) {
      const auto have = values.size();
      const Points fresh = rows_of(sample.points, have, static_cast<Eigen::Index>(want) - have);
      const Vector fy = g.evaluate(fresh);
      values.conservativeResize(static_cast<Eigen::Index>(want));
      values.tail(fy.size()) = fy;
    }
    const auto m = values.size();
    const Points x = rows_of(sample.points, 0, m);
    const Vector w = sample.weights.head(m);
    OrderScore entry{order, n, 0.0, false, ""};
    bool accept = order == config.local_max_order;
    try {
      const MultiIndexSet index_set = make_index_set(config.truncation, config.dim, order, config.index_cap);
      const GridOrthonormalization orth = orthonormalize_on_grid(index_set, dense, box);
      const std::vector<int> folds = assign_folds(static_cast<std::size_t>(m), config.cv_folds, rng);
      const auto score = cross_validation_score(orth, x, values, w, folds, config.cv_folds, box);
      if (score) {
        entry.score = *score;
        accept = accept || *score <= config.incremental_tolerance;
      } else {
        entry.skipped = true;
        entry.note = "training fold smaller than the basis";
      }
    } catch (const NeedsMoreSamples& e) {
      entry.skipped = true;
      entry.note = e.what();
    }
    scores.push_back(entry);
    if (accept) {
      LocalFit fit = fit_with_order(order, x, values, w, dense, config);
      fit.scores = std::move(scores);
      return fit;
    }
  }
  throw CrossValidationFailure("incremental local fit: no order accepted");
}

}  // namespace

std::optional<IterationResult> glhs_iteration(HybridSurrogate& chain, double threshold,
                                              const Points& grid, Vector& grid_values,
                                              const LimitState& g, const GlhsConfig& config,
                                              Engine& rng, int iteration,
                                              std::size_t evaluations_before) {
  if (!(threshold > 0.0)) return std::nullopt;
  const MultiIndexSet index_set =
      make_index_set(config.truncation, config.dim, config.local_max_order, config.index_cap);
  DomainLearningOptions options;
  options.dense_size = config.dense_zone_size;
  options.batch_factor = config.batch_factor;
  options.padding = config.rect_padding;
  options.weight_mode = config.weight_mode;
  const std::size_t m_l = resolved_local_samples(config);

  auto step = domain_learning_step(
      grid, std::span<const double>(grid_values.data(), static_cast<std::size_t>(grid_values.size())),
      chain, threshold, index_set, m_l, options, rng, iteration);
  if (!step) return std::nullopt;

  IterationResult out;
  IterationDiagnostics& d = out.diagnostics;
  d.iteration = iteration;
  d.threshold = threshold;
  d.zone_size = step->zone.size();
  d.dense_size = step->dense.size();
  d.resample_draws = step->dense.drawn;
  d.rect = step->rect;
  d.messages = step->messages;

  Vector values;
  LocalFit fit = fit_local(step->sample, g, step->dense.points, config, rng, values);
  const auto used = static_cast<Eigen::Index>(values.size());
  out.samples.points = step->sample.points.topRows(used);
  out.samples.values = values;
  out.samples.weights = step->sample.weights.head(used);

  const std::size_t depth = chain.depth();
  chain.add_layer(threshold, std::move(fit.surrogate));
  chain.refine(grid, std::span<double>(grid_values.data(), static_cast<std::size_t>(grid_values.size())),
               depth);

  const Vector fitted = chain.evaluate(out.samples.points);
  double sq = (out.samples.values - fitted).squaredNorm();
  if (config.eta_mode == EtaMode::rms) sq /= static_cast<double>(used);

  d.selected_order = fit.order;
  d.cv_scores = std::move(fit.scores);
  d.local_samples = static_cast<std::size_t>(used);
  d.next_threshold = std::sqrt(sq);
  d.evaluations = evaluations_before + static_cast<std::size_t>(used);
  out.dense_zone = std::move(step->dense.points);
  return out;
}

GlhsRun refine(const GlhsDesign& design, const LimitState& g, Engine& rng) {
  const GlhsConfig& config = design.config;
  GlhsRun run{HybridSurrogate(design.global.surrogate), {design.eta0.value}, {}, {},
              config.initial_samples, false, false, design.grid_values};
  double threshold = design.eta0.value;
  for (int l = 1;; ++l) {
    if (l > config.max_iterations) {
      // Stopped by the cap; report whether the zone would still be non-empty.
      const BufferZone zone = compute_buffer_zone(
          design.grid,
          std::span<const double>(run.grid_values.data(), static_cast<std::size_t>(run.grid_values.size())),
          threshold, l);
      run.converged = zone.empty() || !(threshold > 0.0);
      run.truncated = !run.converged;
      break;
    }
    auto result = glhs_iteration(run.chain, threshold, design.grid, run.grid_values, g, config, rng,
                                 l, run.evaluations);
    if (!result) {
      run.converged = true;
      if (!run.iterations.empty()) {
        run.iterations.back().messages.emplace_back(
            "eta_l leaves no grid point in the buffer zone; another iteration needs a larger grid "
            "or an inflated threshold");
      }
      break;
    }
    run.evaluations = result->diagnostics.evaluations;
    threshold = result->diagnostics.next_threshold;
    run.thresholds.push_back(threshold);
    run.samples.push_back(std::move(result->samples));
    run.iterations.push_back(std::move(result->diagnostics));
  }
  if (run.truncated) {
    std::ostringstream msg;
    msg << "GLHS stopped at max_iterations = " << config.max_iterations
        << " with a non-empty buffer zone; a further iteration needs a larger grid or threshold";
    log_info(msg.str());
  }
  return run;
}

GlhsResult run_glhs(const LimitState& g, const GlhsConfig& config, Engine& rng) {
  GlhsDesign design = prepare_design(g, config, rng);
  GlhsRun run = refine(design, g, rng);
  return GlhsResult{std::move(design), std::move(run)};
}

}  // namespace glhs
