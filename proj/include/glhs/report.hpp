#pragma once

#include "glhs/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace glhs {

inline constexpr const char* kIterationsHeader =
    "method,run,iteration,threshold,zone_size,dense_size,resample_draws,selected_order,"
    "local_samples,next_threshold,evaluations";

/// Real number with 17 significant digits.
std::string format_real(double v);

nlohmann::json report_json(const ExperimentResult& result);
nlohmann::json manifest_json(const ExperimentResult& result,
                             const std::vector<std::filesystem::path>& outputs);
std::string iterations_csv(const ExperimentResult& result);
std::string samples_csv(const SampleDump& dump);

/// Writes report.json, iterations.csv, samples_*.csv (when dumped) and
/// manifest.json into `dir`, creating it. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir,
                                                 const ExperimentResult& result);

/// One line per report: method, mean, sigma, m_T.
std::string summary_table(const ExperimentResult& result);

}  // namespace glhs
