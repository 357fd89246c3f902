// Lists design seeds whose global surrogate reproduces a target
// surrogate-only failure probability.
//
//   design_scan --case case_1d --target 0.1363 --tol 0.001 --count 3

#include "glhs/estimators.hpp"
#include "glhs/testcases.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"Scan design seeds by surrogate-only failure probability"};
  std::string name = "case_1d";
  double target = 0.0;
  double tol = 1e-3;
  std::size_t count = 1;
  std::uint64_t first = 0;
  std::uint64_t last = 10'000;
  std::size_t mc = 1'000'000;
  std::uint64_t mc_seed = 0;
  app.add_option("--case", name);
  app.add_option("--target", target)->required();
  app.add_option("--tol", tol);
  app.add_option("--count", count, "Stop after this many matches");
  app.add_option("--first", first);
  app.add_option("--last", last);
  app.add_option("--mc", mc, "Monte Carlo points per seed");
  app.add_option("--mc-seed", mc_seed);
  CLI11_PARSE(app, argc, argv);

  const glhs::TestCase& tc = glhs::find_case(name);
  const glhs::LimitState g = glhs::make_limit_state(tc);
  const glhs::UniformStream stream(tc.config.box(), mc_seed, glhs::StreamTag::monte_carlo);
  std::size_t found = 0;
  for (std::uint64_t seed = first; seed <= last && found < count; ++seed) {
    glhs::Engine rng = glhs::make_stream(seed, glhs::StreamTag::design);
    const glhs::GlhsDesign design = glhs::prepare_design(g, tc.config, rng);
    const auto& s = design.global.surrogate;
    const double pf = glhs::mc_failure_probability(
        [&s](const glhs::Points& x, std::span<double> out) { s.evaluate(x, out); }, mc, stream).pf;
    if (std::fabs(pf - target) <= tol) {
      std::printf("seed %llu  surrogate P_f %.6f  eta_0 %.6g\n", static_cast<unsigned long long>(seed),
                  pf, design.eta0.value);
      ++found;
    }
  }
  return found > 0 ? 0 : 1;
}
