// glhs: failure-probability experiments from a config file.
//
//   glhs run --config case.ini --method glhs --reps 10 --seed 1 --out results/
//   glhs validate --config case.ini
//   glhs cases

#include "glhs/config.hpp"
#include "glhs/experiment.hpp"
#include "glhs/log.hpp"
#include "glhs/report.hpp"
#include "glhs/testcases.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRunFailed = 2;

int print_config_errors(const glhs::ConfigLoad& load) {
  for (const auto& e : load.errors) std::cerr << "error: " << e << '\n';
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global-local hybrid surrogate failure-probability estimation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string method_name = "glhs";
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
  bool dump = false;
  bool slow = false;

  auto* run = app.add_subcommand("run", "Run a method with seeded repetitions");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--method", method_name, "mc | surrogate | glhs | non-iterative | iterative-li | compare-all")
      ->required();
  run->add_option("--reps", reps, "Repetitions")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Run seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Concurrent repetitions")->check(CLI::PositiveNumber);
  run->add_flag("--dump-samples", dump, "Write samples_*.csv for the first repetition");
  run->add_flag("--slow", slow, "Use the configured Monte Carlo size even above 10^6");

  auto* check = app.add_subcommand("validate", "Parse and validate a config, print it normalized");
  check->add_option("--config", config_path, "Config file")->required();

  app.add_subcommand("cases", "List the built-in test cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  if (app.got_subcommand("cases")) {
    for (const auto& tc : glhs::catalog()) {
      std::printf("%-22s d=%d  P_f=%-8g %s\n", tc.name.c_str(), tc.dim, tc.reference_pf,
                  tc.description.c_str());
    }
    return kOk;
  }

  const glhs::ConfigLoad load = glhs::load_config(config_path);
  if (!load.ok()) return print_config_errors(load);
  for (const auto& w : load.warnings) glhs::log_warn(w);

  if (app.got_subcommand("validate")) {
    std::cout << glhs::serialize_config(load.config);
    return kOk;
  }

  const auto method = glhs::parse_method(method_name);
  if (!method) {
    std::cerr << "error: unknown method '" << method_name << "'\n";
    return kInvalid;
  }
  glhs::RunOptions options;
  options.method = *method;
  options.reps = reps;
  options.seed = seed;
  options.jobs = jobs;
  options.dump_samples = dump;
  options.slow = slow;

  try {
    const glhs::ExperimentResult result = glhs::run_experiment(load.config, options);
    glhs::write_outputs(out_dir, result);
    std::cout << glhs::summary_table(result);
    if (result.any_failed) {
      for (const auto& r : result.reports) {
        for (const auto& e : r.errors) std::cerr << "error: " << r.method << ": " << e << '\n';
        break;
      }
      return kRunFailed;
    }
  } catch (const glhs::ConfigError& e) {
    for (const auto& m : e.messages()) std::cerr << "error: " << m << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailed;
  }
  return kOk;
}
