#pragma once

#include "glhs/christoffel.hpp"
#include "glhs/domain_learning.hpp"
#include "glhs/hybrid.hpp"
#include "glhs/limit_state.hpp"
#include "glhs/regression.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glhs {

/// How eta_l is computed from the local residuals r_i at the m_l samples.
///  literal: sqrt(sum_i r_i^2);  rms: sqrt(sum_i r_i^2 / m_l).
enum class EtaMode { literal, rms };

struct GlhsConfig {
  int dim = 1;
  std::size_t grid_points = 10'000;       // m_K
  std::size_t mc_samples = 10'000'000;    // m_c
  double conservativeness = 1.0;          // c
  double alpha = 0.8;
  std::size_t initial_samples = 5;        // m_0
  int global_order = 2;                   // n
  int local_max_order = 3;                // n_max
  std::optional<std::size_t> local_samples = 6;  // m_l; unset means ceil(4 N(n_max))
  double batch_factor = 1.5;              // c_r
  std::size_t dense_zone_size = 10'000;   // m_d
  double rect_padding = 0.01;             // epsilon
  int max_iterations = 10;
  int cv_folds = 5;
  WeightMode weight_mode = WeightMode::reciprocal;
  EtaMode eta_mode = EtaMode::literal;
  Truncation truncation = Truncation::hyperbolic_cross;
  std::size_t index_cap = kDefaultIndexCap;
  bool auto_raise_local_samples = false;
  /// Evaluate the candidate Christoffel set order by order and stop once the
  /// cross-validation error drops below incremental_tolerance.
  bool incremental = false;
  double incremental_tolerance = 1e-6;

  UniformBox box() const { return UniformBox::symmetric(dim); }

  bool operator==(const GlhsConfig&) const = default;
};

/// Hard errors (empty when valid).
std::vector<std::string> validate(const GlhsConfig& config);

/// Soft issues, e.g. c < 1.
std::vector<std::string> warnings(const GlhsConfig& config);

/// m_l actually used: the explicit value when it covers N(n_max), the sampling
/// rate rule max(ceil(4N), N + 1) when unset or auto-raised.
std::size_t resolved_local_samples(const GlhsConfig& config);

struct GlobalFit {
  PceSurrogate surrogate;
  Points points;   // m_0 x d
  Vector values;   // g_T at points
};

/// Least-squares fit of the order-n global surrogate on m_0 uniform points.
/// Throws InsufficientBudget when m_0 < N(n).
GlobalFit fit_global_surrogate(const LimitState& g, const GlhsConfig& config, Engine& rng);

struct Eta0 {
  double value = 0.0;
  std::size_t support = 0;  // |Y|
  bool fallback = false;    // Y was empty and every training point was used
};

/// eta_0 = c * max_{x in Y} |g_T(x) - g_S(x)|, Y = {|g_T| <= alpha * max |g_T|}.
Eta0 compute_eta0(const Vector& truth, const Vector& surrogate, double c, double alpha);

/// Everything drawn before the adaptive stages: grid, training design, global
/// surrogate and eta_0. Repetitions may share one design.
struct GlhsDesign {
  GlhsConfig config;
  Points grid;
  GlobalFit global;
  Eta0 eta0;
  Vector grid_values;  // g_S on the grid
};

GlhsDesign prepare_design(const LimitState& g, const GlhsConfig& config, Engine& rng);

struct LocalSamples {
  Points points;
  Vector values;
  Vector weights;
};

struct IterationDiagnostics {
  int iteration = 0;               // l
  double threshold = 0.0;          // eta_{l-1}
  std::size_t zone_size = 0;       // m_h, stage-(a) grid points
  std::size_t dense_size = 0;      // m_d actually used
  std::size_t resample_draws = 0;
  Hyperrectangle rect;
  int selected_order = 0;          // n_l
  std::size_t local_samples = 0;   // m_l evaluated
  double next_threshold = 0.0;     // eta_l
  std::size_t evaluations = 0;     // m_T after this iteration
  std::vector<OrderScore> cv_scores;
  std::vector<std::string> messages;
};

struct IterationResult {
  IterationDiagnostics diagnostics;
  LocalSamples samples;
  Points dense_zone;
};

/// One GLHS iteration on `chain`, whose grid values are `grid_values`. On
/// success appends the local layer, refreshes `grid_values` and returns the
/// diagnostics; nullopt when the buffer zone on the grid is empty.
std::optional<IterationResult> glhs_iteration(HybridSurrogate& chain, double threshold,
                                              const Points& grid, Vector& grid_values,
                                              const LimitState& g, const GlhsConfig& config,
                                              Engine& rng, int iteration,
                                              std::size_t evaluations_before);

struct GlhsRun {
  HybridSurrogate chain;
  std::vector<double> thresholds;  // eta_0, eta_1, ...
  std::vector<IterationDiagnostics> iterations;
  std::vector<LocalSamples> samples;
  std::size_t evaluations = 0;     // m_T
  bool converged = false;          // stopped on an empty buffer zone
  bool truncated = false;          // stopped at max_iterations
  Vector grid_values;              // final chain on the grid
};

/// Iterates from a prepared design until the zone empties or max_iterations.
GlhsRun refine(const GlhsDesign& design, const LimitState& g, Engine& rng);

struct GlhsResult {
  GlhsDesign design;
  GlhsRun run;
};

/// Full pipeline on one stream: design, then refinement.
GlhsResult run_glhs(const LimitState& g, const GlhsConfig& config, Engine& rng);

}  // namespace glhs
