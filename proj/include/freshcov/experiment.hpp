#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "freshcov/analysis.hpp"
#include "freshcov/config_io.hpp"
#include "freshcov/simulator.hpp"

namespace freshcov {

struct SweepRow {
  double value = 0.0;  ///< NaN when there is no sweep axis
  std::string method;  ///< "analysis" or "simulation"
  double p_c = 0.0;
  double half_width = 0.0;
  double p_s = 0.0;
  double p_e = 0.0;
  double sensing_ratio = 0.0;
  double ec_ratio = 0.0;
  double mean_coverage = 0.0;
};

/// Policy actually used at one configuration: the configured one, or the
/// optimum of the probability policy.
PolicySpec resolve_policy(const ExperimentConfig& cfg);

/// Single-sensor runs produce an analysis row and a simulation row per
/// point; multi-sensor runs a simulation row. An empty value list yields no
/// rows; a missing axis evaluates the base config once.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Minimal RFC 4180 quoting.
std::string csv_field(const std::string& s);
/// Shortest round-trip decimal form; "" for NaN, "inf"/"-inf" for infinities.
std::string format_number(double v);

/// Per-slot trace export: slot, coverage, then age and battery per sensor.
void write_trace_csv(std::ostream& out, const EpisodeTrace& trace);

nlohmann::json trace_summary(const EpisodeTrace& trace);

nlohmann::json manifest(const ExperimentConfig& cfg, const std::string& command);

std::string version_string();

struct ValidationPoint {
  std::int64_t v_slots = 0;
  std::string ranges;  ///< range number per (prev, cur) pair with positive weight
  double analytic = 0.0;
  double simulated = 0.0;
  double deviation = 0.0;
};

struct ValidationReport {
  double p_s = 0.0;
  double p_e = 0.0;
  std::int64_t rounds = 0;
  double tolerance = 0.02;
  double max_deviation = 0.0;
  bool passed = false;
  std::vector<ValidationPoint> points;
  std::vector<int> ranges_seen;  ///< distinct range numbers exercised
};

/// Compares the closed-form violation probability with the fraction of
/// slots of one long simulation whose sink-side age exceeds the target, for
/// every integer target from 0 until both are zero.
ValidationReport validate_analysis(const ExperimentConfig& cfg, double tolerance = 0.02);

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const ClosedFormResult& r);

}  // namespace freshcov
