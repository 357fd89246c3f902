#pragma once

#include "glhs/config.hpp"
#include "glhs/estimators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glhs {

enum class Method { mc, surrogate, glhs, non_iterative, iterative_li, compare_all };

std::optional<Method> parse_method(std::string_view name);
std::string_view to_string(Method m);

struct RunOptions {
  Method method = Method::glhs;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool dump_samples = false;
  /// Use the configured m_c even above mc_cap.
  bool slow = false;
  std::size_t mc_cap = 1'000'000;
};

/// Point sets of the first repetition, kept for plotting.
struct SampleDump {
  std::string name;                  // file stem, e.g. "grid"
  std::vector<std::string> columns;  // header after x1..xd
  Points x;
  Matrix values;                     // one column per entry of `columns`
};

struct ExperimentResult {
  ExperimentConfig config;
  RunOptions options;
  std::size_t mc_samples = 0;                  // m_c actually used
  std::vector<FailureReport> reports;          // one per method row
  std::vector<double> rep_seconds;             // wall clock per repetition
  double total_seconds = 0.0;
  std::vector<std::string> notes;
  std::vector<SampleDump> dumps;
  bool any_failed = false;
};

/// Runs `options.method` `options.reps` times. Repetition k draws its
/// adaptive stages from the stream (seed, k); the design comes from
/// design_seed when shared. Failures are recorded per repetition.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace glhs
