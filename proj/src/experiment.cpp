#include "glhs/experiment.hpp"

#include "glhs/error.hpp"
#include "glhs/log.hpp"
#include "glhs/testcases.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace glhs {

std::optional<Method> parse_method(std::string_view name) {
  if (name == "mc") return Method::mc;
  if (name == "surrogate") return Method::surrogate;
  if (name == "glhs") return Method::glhs;
  if (name == "non-iterative") return Method::non_iterative;
  if (name == "iterative-li") return Method::iterative_li;
  if (name == "compare-all") return Method::compare_all;
  return std::nullopt;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::mc: return "mc";
    case Method::surrogate: return "surrogate";
    case Method::glhs: return "glhs";
    case Method::non_iterative: return "non-iterative";
    case Method::iterative_li: return "iterative-li";
    case Method::compare_all: return "compare-all";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct RowValue {
  double pf = 0.0;
  std::optional<std::size_t> evaluations;
  std::vector<IterationDiagnostics> iterations;
};

struct RepOutcome {
  std::vector<RowValue> rows;
  std::string error;
  double seconds = 0.0;
  std::vector<SampleDump> dumps;
};

BatchFunction as_batch(const HybridSurrogate& chain) {
  return [&chain](const Points& x, std::span<double> out) { chain.evaluate(x, out); };
}

BatchFunction as_batch(const PceSurrogate& s) {
  return [&s](const Points& x, std::span<double> out) { s.evaluate(x, out); };
}

SampleDump dump_of(std::string name, const Points& x, std::vector<std::string> columns,
                   std::vector<Vector> values) {
  SampleDump d{std::move(name), std::move(columns), x, Matrix(x.rows(), static_cast<Eigen::Index>(values.size()))};
  for (std::size_t j = 0; j < values.size(); ++j) d.values.col(static_cast<Eigen::Index>(j)) = values[j];
  return d;
}

class Runner {
public:
  Runner(const ExperimentConfig& config, const RunOptions& options, ExperimentResult& result)
    : cfg_(config),
      opt_(options),
      tc_(find_case(config.test_case)),
      glhs_(config.glhs),
      result_(result),
      mc_stream_(config.glhs.box(), options.seed, StreamTag::monte_carlo) {
    if (!opt_.slow && glhs_.mc_samples > opt_.mc_cap) {
      std::ostringstream msg;
      msg << "m_c capped at " << opt_.mc_cap << " (configured " << glhs_.mc_samples
          << "); pass --slow for the full count";
      result_.notes.push_back(msg.str());
      log_warn(msg.str());
      glhs_.mc_samples = opt_.mc_cap;
    }
    result_.mc_samples = glhs_.mc_samples;
    const std::size_t reps = std::max<std::size_t>(1, opt_.reps);
    const auto jobs = static_cast<std::size_t>(std::max(1, opt_.jobs));
    inner_threads_ = static_cast<int>(std::max<std::size_t>(1, jobs / std::min(jobs, reps)));
  }

  std::vector<std::string> labels() const {
    switch (opt_.method) {
      case Method::mc: return {"mc"};
      case Method::surrogate: return {"surrogate"};
      case Method::glhs: return {"glhs"};
      case Method::non_iterative: return {"non-iterative"};
      case Method::iterative_li: return {"iterative-li"};
      case Method::compare_all: {
        const std::size_t b = ni_budget();
        return {"mc", "surrogate", "glhs l=1", "glhs l=2",
                "non-iterative count=" + std::to_string(b),
                "non-iterative count=" + std::to_string(2 * b)};
      }
    }
    return {};
  }

  /// Work shared by every repetition.
  void prepare() {
    const bool needs_mc = opt_.method == Method::mc || opt_.method == Method::compare_all;
    if (needs_mc) {
      const LimitState g = make_limit_state(tc_);
      mc_pf_ = mc_failure_probability(g.uncounted(), glhs_.mc_samples, mc_stream_,
                                      std::max(1, opt_.jobs)).pf;
    }
    if (opt_.method != Method::mc && cfg_.design_mode == DesignMode::shared) {
      const LimitState g = make_limit_state(tc_);
      Engine rng = make_stream(cfg_.design_seed, StreamTag::design);
      shared_design_.emplace(prepare_design(g, glhs_, rng));
      shared_surrogate_pf_ = surrogate_pf(*shared_design_, std::max(1, opt_.jobs));
    }
  }

  RepOutcome run(std::size_t rep) {
    RepOutcome out;
    const auto start = Clock::now();
    try {
      out.rows = run_rows(rep, out.dumps);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  }

private:
  std::size_t ni_budget() const {
    return cfg_.ni_budget.value_or(resolved_local_samples(cfg_.glhs));
  }

  double surrogate_pf(const GlhsDesign& design, int threads) const {
    return mc_failure_probability(as_batch(design.global.surrogate), glhs_.mc_samples, mc_stream_,
                                  threads).pf;
  }

  std::vector<RowValue> run_rows(std::size_t rep, std::vector<SampleDump>& dumps) {
    if (opt_.method == Method::mc) return {RowValue{mc_pf_, std::nullopt, {}}};

    // Counts this repetition's high-fidelity calls. A shared design was paid
    // for once, but every run is charged its m_0 training evaluations.
    LimitState g = make_limit_state(tc_);
    std::optional<GlhsDesign> own;
    double s_pf = shared_surrogate_pf_;
    if (!shared_design_) {
      Engine rng = make_stream(opt_.seed, StreamTag::design, rep);
      own.emplace(prepare_design(g, glhs_, rng));
      s_pf = surrogate_pf(*own, inner_threads_);
    }
    const GlhsDesign& design = own ? *own : *shared_design_;
    const std::size_t m0 = glhs_.initial_samples;
    auto calls = [&]() { return static_cast<std::size_t>(g.calls()) + (own ? 0 : m0); };
    if (opt_.dump_samples && rep == 0) {
      dumps.push_back(dump_of("design", design.global.points, {"g_true"}, {design.global.values}));
    }

    Engine rng = make_stream(opt_.seed, StreamTag::repetition, rep);
    switch (opt_.method) {
      case Method::mc:
        break;
      case Method::surrogate:
        return {RowValue{s_pf, m0, {}}};
      case Method::glhs: {
        GlhsRun run = refine(design, g, rng);
        check_accounting(run.evaluations, calls());
        const double pf = glhs_pf(run.chain);
        if (opt_.dump_samples && rep == 0) dump_run(design, run, dumps);
        return {RowValue{pf, run.evaluations, run.iterations}};
      }
      case Method::non_iterative: {
        const UniformStream stream(glhs_.box(), opt_.seed, StreamTag::non_iterative, 2 * rep);
        const auto est = non_iterative_pf(as_batch(design.global.surrogate), g, design.eta0.value,
                                          stream, max_draws(), ni_budget());
        return {RowValue{est.pf, calls(), {}}};
      }
      case Method::iterative_li: {
        const UniformStream stream(glhs_.box(), opt_.seed, StreamTag::iterative_li, rep);
        const Points samples = stream.head(cfg_.li_samples);
        const double tol = cfg_.li_tolerance.value_or(10.0 / static_cast<double>(cfg_.li_samples));
        const auto est = iterative_li_pf(as_batch(design.global.surrogate), g, samples,
                                         cfg_.li_group_size, tol, cfg_.li_max_groups);
        return {RowValue{est.pf, calls(), {}}};
      }
      case Method::compare_all:
        return compare_all(design, g, s_pf, rep, rng, dumps);
    }
    return {};
  }

  std::vector<RowValue> compare_all(const GlhsDesign& design, const LimitState& g, double s_pf,
                                    std::size_t rep, Engine& rng, std::vector<SampleDump>& dumps) {
    const std::size_t m0 = glhs_.initial_samples;
    std::vector<RowValue> rows;
    rows.push_back({mc_pf_, std::nullopt, {}});
    rows.push_back({s_pf, m0, {}});

    // GLHS with exactly one local layer.
    GlhsDesign one = design;
    one.config.max_iterations = 1;
    GlhsRun run = refine(one, g, rng);
    rows.push_back({glhs_pf(run.chain), run.evaluations, run.iterations});
    if (opt_.dump_samples && rep == 0) dump_run(design, run, dumps);

    // Second layer on the inflated threshold (eta_0 + eta_1) / 2.
    const double eta0 = design.eta0.value;
    const double eta1 = run.thresholds.size() > 1 ? run.thresholds[1] : eta0;
    const double inflated = 0.5 * (eta0 + eta1);
    RowValue second = rows.back();
    if (!run.iterations.empty()) {
      Vector values = run.grid_values;
      auto it = glhs_iteration(run.chain, inflated, design.grid, values, g, one.config, rng, 2,
                               run.evaluations);
      if (it) {
        second.evaluations = it->diagnostics.evaluations;
        second.iterations.push_back(std::move(it->diagnostics));
        second.pf = glhs_pf(run.chain);
      }
    }
    rows.push_back(std::move(second));

    // Budget-matched non-iterative baselines on g_S, fresh counters each.
    const std::size_t b = ni_budget();
    LimitState g1 = g.fresh_counter();
    const UniformStream s1(glhs_.box(), opt_.seed, StreamTag::non_iterative, 2 * rep);
    const auto ni1 = non_iterative_pf(as_batch(design.global.surrogate), g1, eta0, s1, max_draws(), b);
    rows.push_back({ni1.pf, m0 + ni1.evaluations, {}});

    LimitState g2 = g.fresh_counter();
    const UniformStream s2(glhs_.box(), opt_.seed, StreamTag::non_iterative, 2 * rep + 1);
    const auto ni2 =
        non_iterative_pf(as_batch(design.global.surrogate), g2, inflated, s2, max_draws(), 2 * b);
    rows.push_back({ni2.pf, m0 + ni2.evaluations, {}});
    return rows;
  }

  std::size_t max_draws() const {
    return cfg_.ni_max_draws != 0 ? cfg_.ni_max_draws : glhs_.mc_samples;
  }

  double glhs_pf(const HybridSurrogate& chain) const {
    return mc_failure_probability(as_batch(chain), glhs_.mc_samples, mc_stream_, inner_threads_).pf;
  }

  static void check_accounting(std::size_t reported, std::size_t counted) {
    if (reported != counted) {
      std::ostringstream msg;
      msg << "evaluation count mismatch: reported " << reported << ", limit state counted "
          << counted;
      throw Error(msg.str());
    }
  }

  void dump_run(const GlhsDesign& design, const GlhsRun& run, std::vector<SampleDump>& dumps) const {
    Vector zone0(design.grid.rows());
    for (Eigen::Index i = 0; i < zone0.size(); ++i) {
      zone0[i] = std::fabs(design.grid_values[i]) <= design.eta0.value ? 1.0 : 0.0;
    }
    dumps.push_back(dump_of("grid", design.grid, {"g_global", "g_hybrid", "in_zone_0"},
                            {design.grid_values, run.grid_values, zone0}));
    for (std::size_t l = 0; l < run.samples.size(); ++l) {
      const LocalSamples& s = run.samples[l];
      dumps.push_back(dump_of("local_" + std::to_string(l + 1), s.points, {"g_true", "weight"},
                              {s.values, s.weights}));
    }
  }

  const ExperimentConfig& cfg_;
  const RunOptions& opt_;
  const TestCase& tc_;
  GlhsConfig glhs_;
  ExperimentResult& result_;
  UniformStream mc_stream_;
  int inner_threads_ = 1;
  double mc_pf_ = 0.0;
  std::optional<GlhsDesign> shared_design_;
  double shared_surrogate_pf_ = 0.0;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const auto start = Clock::now();
  ExperimentResult result;
  result.config = config;
  result.options = options;
  {
    const auto errors = validate(config.glhs);
    if (!errors.empty()) throw ConfigError(errors);
  }
  Runner runner(config, options, result);
  const std::vector<std::string> labels = runner.labels();
  runner.prepare();

  // The reference Monte Carlo value is deterministic; one run suffices.
  const std::size_t reps = options.method == Method::mc ? 1 : std::max<std::size_t>(1, options.reps);
  std::vector<RepOutcome> outcomes(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < reps; k = next++) outcomes[k] = runner.run(k);
  };
  const auto jobs = std::min<std::size_t>(reps, static_cast<std::size_t>(std::max(1, options.jobs)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Assembly in repetition order.
  for (std::size_t r = 0; r < labels.size(); ++r) {
    FailureReport report;
    report.method = labels[r];
    report.mc_samples = result.mc_samples;
    for (std::size_t k = 0; k < reps; ++k) {
      const RepOutcome& o = outcomes[k];
      if (!o.error.empty()) {
        report.errors.push_back("rep " + std::to_string(k) + ": " + o.error);
        continue;
      }
      report.per_run.push_back(o.rows[r].pf);
      report.evaluations.push_back(o.rows[r].evaluations);
      if (!o.rows[r].iterations.empty()) report.iterations.push_back(o.rows[r].iterations);
    }
    report.stats = summarize(report.per_run);
    result.reports.push_back(std::move(report));
  }
  for (std::size_t k = 0; k < reps; ++k) {
    result.rep_seconds.push_back(outcomes[k].seconds);
    if (!outcomes[k].error.empty()) {
      result.any_failed = true;
      log_error("repetition " + std::to_string(k) + " failed: " + outcomes[k].error);
    }
  }
  if (!outcomes.empty()) result.dumps = std::move(outcomes.front().dumps);
  result.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace glhs
