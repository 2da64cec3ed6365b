#pragma once

#include <cstdint>
#include <vector>

#include "freshcov/coverage.hpp"
#include "freshcov/params.hpp"

namespace freshcov {

enum class ScenarioKind { SinglePrecharged, MultiEh };
enum class BatteryModel { PreCharged, EnergyHarvesting };

/// How the pre-charged budget B_th is applied in simulation.
///  - Hard: cumulative consumption per episode never exceeds B_th; a step the
///    remaining budget cannot pay for drops the data item.
///  - Expected: nothing is blocked; the budget only constrains the policy in
///    expectation (N_r * E_t <= B_th), which is what the closed form assumes.
enum class BudgetEnforcement { Hard, Expected };

/// Analytic: each attempt fails with the closed-form outage probability.
/// Geometric: each attempt samples interferers and fades.
enum class ChannelFidelity { Analytic, Geometric };

/// Temporal: sensing radius shrinks with the sink-side age.
/// Cic: fixed radius r(tau_r * Delta) from a successful update until the end
/// of that round.
enum class CoverageModel { Temporal, Cic };

struct AreaSpec {
  enum class Shape { Rectangle, Disc };
  Shape shape = Shape::Rectangle;
  double width = 250.0;
  double height = 250.0;
  double radius = 50.0;
  Point2 center{};
  double resolution = 1.0;

  CoverageGrid make_grid() const;
  /// Continuous area in m^2.
  double area() const;
  double diagonal() const;
};

/// One sensor at the centre of a disc-shaped area, sink at a fixed distance.
struct SingleSensorScenario {
  ChannelParams channel;
  CorrelationParams correlation;
  EnergyParams energy;
  TimingParams timing;
  double distance_m = 100.0;
  double area_radius_m = 50.0;
  double eta = 0.9;

  double area() const;
  void validate() const;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::MultiEh;
  ChannelParams channel;
  CorrelationParams correlation;
  EnergyParams energy;
  TimingParams timing;
  BatteryModel battery = BatteryModel::EnergyHarvesting;
  BudgetEnforcement budget = BudgetEnforcement::Hard;
  ChannelFidelity fidelity = ChannelFidelity::Analytic;
  CoverageModel coverage_model = CoverageModel::Temporal;
  double eta = 0.9;
  double penalty = 1.0;              ///< nu in the per-round reward
  double observation_range_m = 100.0;
  AreaSpec area;
  Point2 sink{};
  std::vector<Point2> sensors;

  std::size_t num_sensors() const noexcept { return sensors.size(); }
  /// Throws ParameterError on any violated invariant.
  void validate() const;
  /// Only meaningful for a single-sensor pre-charged scenario.
  SingleSensorScenario single_sensor() const;
};

ChannelParams default_channel();
CorrelationParams default_correlation();
TimingParams default_timing();
/// Energies of the single pre-charged setting (E_C = 12 mJ, B_th = 400 mJ).
EnergyParams default_single_energy();
/// Energies of the multi-sensor EH setting (E_C = 20 mJ, B_max = 50 mJ, U[1.5, 4.5]).
EnergyParams default_multi_energy();

SingleSensorScenario default_single_scenario();

/// Scenario for the simulator: sensor at the origin, sink at (d, 0), disc grid.
ScenarioConfig make_single_scenario(const SingleSensorScenario& s);

/// 250 m x 250 m area, sink at the centre, sensors placed uniformly at random.
ScenarioConfig default_multi_scenario(std::size_t num_sensors = 10, std::uint64_t placement_seed = 1);

/// Uniform placement inside the rectangle, at least 1 m away from the sink.
std::vector<Point2> place_sensors_uniform(std::size_t n, double width, double height, Point2 sink,
                                          std::uint64_t seed);

}  // namespace freshcov
