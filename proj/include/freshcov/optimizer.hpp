#pragma once

#include <cstdint>
#include <vector>

#include "freshcov/policies.hpp"
#include "freshcov/scenario.hpp"
#include "freshcov/simulator.hpp"

namespace freshcov {

struct MultiSearchOptions {
  double step = 0.05;  ///< grid step for both p_s and p_e
  int replications = 10;
  std::uint64_t seed = 1;
  int threads = 1;
  RunOptions run;
  bool cic = false;
};

struct GridPoint {
  double p_s = 0.0;
  double p_e = 0.0;
  CoverageEstimate estimate;
};

struct MultiOptimum {
  double p_s = 0.0;
  double p_e = 0.0;
  double p_c = 0.0;
  /// Confidence half-width from the spread of replication means; slots of
  /// one episode are correlated, so the per-slot binomial width is too small.
  double half_width = 0.0;
  std::vector<GridPoint> grid;  ///< p_s-major
};

/// Values {0, step, ..., 1}; `step` must divide 1 up to rounding.
std::vector<double> probability_grid(double step);

/// Exhaustive search of the probability policy by simulation. Every grid
/// point uses the same replication seeds. Ties go to the smaller p_s, then
/// the smaller p_e.
MultiOptimum optimize_multi(const ScenarioConfig& cfg, const MultiSearchOptions& opts);

}  // namespace freshcov
