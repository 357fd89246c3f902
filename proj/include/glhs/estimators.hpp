#pragma once

#include "glhs/glhs.hpp"
#include "glhs/limit_state.hpp"
#include "glhs/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glhs {

struct McEstimate {
  double pf = 0.0;
  std::size_t failures = 0;
  std::size_t samples = 0;
};

/// (1/m_c) * #{g(x_i) <= 0} over the first m_c points of `stream`. Chunks are
/// evaluated by up to `threads` workers; the count does not depend on it.
McEstimate mc_failure_probability(const BatchFunction& g, std::size_t m_c,
                                  const UniformStream& stream, int threads = 1);

struct NonIterativeEstimate {
  double pf = 0.0;
  std::size_t samples = 0;      // m, points drawn
  std::size_t evaluations = 0;  // g_T calls, the in-buffer points
  std::size_t failures = 0;
};

/// Failure set {g_S < -eta} u ({|g_S| <= eta} n {g_T <= 0}). Without a budget
/// exactly `samples` points of the stream are classified. With one, points are
/// consumed until `budget` in-buffer points were evaluated, but at most
/// `samples`; falling short throws Starvation.
NonIterativeEstimate non_iterative_pf(const BatchFunction& surrogate, const LimitState& g,
                                      double eta, const UniformStream& stream, std::size_t samples,
                                      std::optional<std::size_t> budget = std::nullopt);

struct IterativeLiEstimate {
  double pf = 0.0;
  std::size_t evaluations = 0;
  std::size_t groups = 0;
  bool converged = false;  // stopped on the tolerance rather than exhaustion
  std::vector<double> history;  // estimate after each group
};

/// Groups of `group_size` samples in ascending |g_S| order are re-classified
/// with g_T until one group changes the estimate by less than `tolerance`,
/// the samples run out, or `max_groups` groups were used (0: no cap).
IterativeLiEstimate iterative_li_pf(const BatchFunction& surrogate, const LimitState& g,
                                    const Points& samples, std::size_t group_size,
                                    double tolerance, std::size_t max_groups = 0);

/// Nearest-rank c_lim quantile: element ceil(c_lim * n) of the ascending sort.
double empirical_quantile_threshold(std::vector<double> values, double c_lim);

/// g(x) = threshold - q(x): failure where the quantity of interest exceeds it.
LimitState quantile_limit_state(std::string name, int dim, BatchFunction quantity,
                                double threshold);

struct RepetitionStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, n - 1
  std::size_t runs = 0;
};

RepetitionStats summarize(const std::vector<double>& values);

struct FailureReport {
  std::string method;
  std::size_t mc_samples = 0;
  RepetitionStats stats;
  std::vector<double> per_run;
  std::vector<std::optional<std::size_t>> evaluations;  // m_T per run; empty for references
  std::vector<std::string> errors;                      // per failed run, "rep k: message"
  std::vector<std::vector<IterationDiagnostics>> iterations;  // GLHS only
};

}  // namespace glhs
