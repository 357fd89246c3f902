#include "glhs/report.hpp"

#include "glhs/error.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace glhs {

using nlohmann::json;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json iteration_json(const IterationDiagnostics& d) {
  json scores = json::array();
  for (const OrderScore& s : d.cv_scores) {
    json e = {{"order", s.order}, {"basis_size", s.basis_size}, {"skipped", s.skipped}};
    e["score"] = s.skipped ? json(nullptr) : json(s.score);
    if (!s.note.empty()) e["note"] = s.note;
    scores.push_back(e);
  }
  return {{"iteration", d.iteration},
          {"threshold", d.threshold},
          {"zone_size", d.zone_size},
          {"dense_size", d.dense_size},
          {"resample_draws", d.resample_draws},
          {"rect_lower", std::vector<double>(d.rect.lower.data(), d.rect.lower.data() + d.rect.lower.size())},
          {"rect_upper", std::vector<double>(d.rect.upper.data(), d.rect.upper.data() + d.rect.upper.size())},
          {"selected_order", d.selected_order},
          {"local_samples", d.local_samples},
          {"next_threshold", d.next_threshold},
          {"evaluations", d.evaluations},
          {"cv_scores", scores},
          {"messages", d.messages}};
}

std::string evaluations_label(const FailureReport& r) {
  std::set<std::size_t> distinct;
  for (const auto& e : r.evaluations) {
    if (!e) return "n/a (reference)";
    distinct.insert(*e);
  }
  if (distinct.empty()) return "n/a (reference)";
  if (distinct.size() == 1) return std::to_string(*distinct.begin());
  return std::to_string(*distinct.begin()) + ".." + std::to_string(*distinct.rbegin());
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
  if (!out) throw Error("failed writing " + p.string());
}

}  // namespace

json report_json(const ExperimentResult& result) {
  json methods = json::array();
  for (const FailureReport& r : result.reports) {
    json evals = json::array();
    for (const auto& e : r.evaluations) evals.push_back(e ? json(*e) : json(nullptr));
    json iters = json::array();
    for (const auto& run : r.iterations) {
      json one = json::array();
      for (const auto& d : run) one.push_back(iteration_json(d));
      iters.push_back(one);
    }
    methods.push_back({{"method", r.method},
                       {"mc_samples", r.mc_samples},
                       {"mean_pf", r.stats.mean},
                       {"std_pf", r.stats.stddev},
                       {"runs", r.stats.runs},
                       {"per_run_pf", r.per_run},
                       {"evaluations", evals},
                       {"evaluations_label", evaluations_label(r)},
                       {"errors", r.errors},
                       {"iterations", iters}});
  }
  return {{"tool", "glhs"},
          {"version", GLHS_VERSION},
          {"test_case", result.config.test_case},
          {"method", std::string(to_string(result.options.method))},
          {"seed", result.options.seed},
          {"reps", result.options.reps},
          {"mc_samples", result.mc_samples},
          {"notes", result.notes},
          {"failed", result.any_failed},
          {"results", methods}};
}

json manifest_json(const ExperimentResult& result, const std::vector<std::filesystem::path>& outputs) {
  std::vector<std::string> paths;
  for (const auto& p : outputs) paths.push_back(p.string());
  return {{"tool", "glhs"},
          {"version", GLHS_VERSION},
          {"config", serialize_config(result.config)},
          {"methods", std::vector<std::string>{std::string(to_string(result.options.method))}},
          {"seed", result.options.seed},
          {"reps", result.options.reps},
          {"jobs", result.options.jobs},
          {"slow", result.options.slow},
          {"mc_samples", result.mc_samples},
          {"rep_seconds", result.rep_seconds},
          {"total_seconds", result.total_seconds},
          {"outputs", paths}};
}

std::string iterations_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << kIterationsHeader << '\n';
  for (const FailureReport& r : result.reports) {
    for (std::size_t run = 0; run < r.iterations.size(); ++run) {
      for (const IterationDiagnostics& d : r.iterations[run]) {
        out << r.method << ',' << run << ',' << d.iteration << ',' << format_real(d.threshold) << ','
            << d.zone_size << ',' << d.dense_size << ',' << d.resample_draws << ','
            << d.selected_order << ',' << d.local_samples << ',' << format_real(d.next_threshold)
            << ',' << d.evaluations << '\n';
      }
    }
  }
  return out.str();
}

std::string samples_csv(const SampleDump& dump) {
  std::ostringstream out;
  for (Eigen::Index k = 0; k < dump.x.cols(); ++k) out << (k ? "," : "") << 'x' << (k + 1);
  for (const auto& c : dump.columns) out << ',' << c;
  out << '\n';
  for (Eigen::Index i = 0; i < dump.x.rows(); ++i) {
    for (Eigen::Index k = 0; k < dump.x.cols(); ++k) out << (k ? "," : "") << format_real(dump.x(i, k));
    for (Eigen::Index j = 0; j < dump.values.cols(); ++j) out << ',' << format_real(dump.values(i, j));
    out << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir,
                                                 const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto report = dir / "report.json";
  write_file(report, report_json(result).dump(2) + "\n");
  written.push_back(report);
  const auto iterations = dir / "iterations.csv";
  write_file(iterations, iterations_csv(result));
  written.push_back(iterations);
  for (const SampleDump& d : result.dumps) {
    const auto p = dir / ("samples_" + d.name + ".csv");
    write_file(p, samples_csv(d));
    written.push_back(p);
  }
  const auto manifest = dir / "manifest.json";
  written.push_back(manifest);
  write_file(manifest, manifest_json(result, written).dump(2) + "\n");
  return written;
}

std::string summary_table(const ExperimentResult& result) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-26s %-12s %-12s %-6s %s\n", "method", "mean_pf", "std_pf", "runs",
                "m_T");
  out << line;
  for (const FailureReport& r : result.reports) {
    std::snprintf(line, sizeof line, "%-26s %-12.6g %-12.4g %-6zu %s\n", r.method.c_str(),
                  r.stats.mean, r.stats.stddev, r.stats.runs, evaluations_label(r).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace glhs
