#pragma once

#include "glhs/glhs.hpp"
#include "glhs/limit_state.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glhs {

/// (-10/16 x^4 + 15/16 x^3 - 15/8 x^2 - 4/16 x + 5) e^{-x} - 2
double g1d(double x);

/// x1^4 cos(x1) + 2 x1^3 + 0.5 x1^2 + 0.5 x1 x2 - 0.5 x2^2 cos(x2) + 1
double g2d(double x1, double x2);

/// Same with 0.5 x1^3. Positive on the whole square, so it never fails.
double g2d_as_printed(double x1, double x2);

struct TestCase {
  std::string name;
  std::string description;
  int dim = 1;
  double reference_pf = 0.0;        // P(g <= 0) under the uniform input
  std::uint64_t design_seed = 0;    // seed of the reference grid and training design
  GlhsConfig config;
  LimitState::PointFunction function;
};

/// case_1d, case_1d_conservative, case_2d, case_2d_as_printed.
const std::vector<TestCase>& catalog();

/// Throws LookupError for unknown names.
const TestCase& find_case(std::string_view name);

GlhsConfig reference_config(std::string_view name);

/// Counted limit state for a catalog entry.
LimitState make_limit_state(const TestCase& tc);

}  // namespace glhs
