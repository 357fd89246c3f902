#pragma once

#include "glhs/error.hpp"
#include "glhs/glhs.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glhs {

/// Whether repetitions share the grid, training design and global surrogate
/// (drawn from design_seed) or each draws its own.
enum class DesignMode { shared, per_rep };

struct ExperimentConfig {
  std::string test_case = "case_1d";
  GlhsConfig glhs;
  std::uint64_t design_seed = 0;
  DesignMode design_mode = DesignMode::shared;

  std::optional<std::size_t> ni_budget;   // unset: m_l
  std::size_t ni_max_draws = 0;           // 0: mc_samples
  std::size_t li_samples = 100'000;
  std::size_t li_group_size = 100;
  std::optional<double> li_tolerance;     // unset: 10 / li_samples
  std::size_t li_max_groups = 0;          // 0: no cap

  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigLoad {
  ExperimentConfig config;
  std::vector<std::string> errors;    // "origin:line: message"
  std::vector<std::string> warnings;
  std::vector<std::string> defaulted; // keys not present in the document

  bool ok() const { return errors.empty(); }
};

/// Parses the INI-style document:
///   # comment            ; comment
///   [section]
///   key = value
/// Every error is collected; nothing throws.
ConfigLoad parse_config(std::string_view text, std::string_view origin = "<config>");

/// Reads and parses a file; a missing file is reported as an error.
ConfigLoad load_config(const std::filesystem::path& path);

/// Aggregated validation failure.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
};

/// load_config, throwing ConfigError with every message when invalid.
ExperimentConfig validate_config(const std::filesystem::path& path,
                                 std::vector<std::string>* warnings = nullptr);

/// Canonical document; parse_config(serialize_config(c)).config == c.
std::string serialize_config(const ExperimentConfig& config);

/// Every key, as "section.key".
const std::vector<std::string>& config_keys();

std::string_view to_string(WeightMode m);
std::string_view to_string(EtaMode m);
std::string_view to_string(Truncation t);
std::string_view to_string(DesignMode m);

}  // namespace glhs
