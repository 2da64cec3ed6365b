#include "freshcov/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "freshcov/errors.hpp"
#include "freshcov/rng.hpp"

namespace freshcov {

CoverageGrid AreaSpec::make_grid() const {
  return shape == Shape::Disc ? CoverageGrid::disc(center, radius, resolution)
                              : CoverageGrid::rectangle(width, height, resolution);
}

double AreaSpec::area() const {
  return shape == Shape::Disc ? std::numbers::pi * radius * radius : width * height;
}

double AreaSpec::diagonal() const {
  return shape == Shape::Disc ? 2.0 * radius : std::hypot(width, height);
}

double SingleSensorScenario::area() const { return std::numbers::pi * area_radius_m * area_radius_m; }

void SingleSensorScenario::validate() const {
  channel.validate();
  correlation.validate();
  energy.validate();
  timing.validate(channel.max_retx);
  if (!(distance_m > 0.0)) throw ParameterError("sensor-sink distance must be positive");
  if (!(area_radius_m > 0.0)) throw ParameterError("area radius must be positive");
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must be in (0,1]");
}

void ScenarioConfig::validate() const {
  channel.validate();
  correlation.validate();
  energy.validate();
  timing.validate(channel.max_retx);
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must be in (0,1]");
  if (!(penalty >= 0.0) || !std::isfinite(penalty)) throw ParameterError("penalty must be >= 0");
  if (!(observation_range_m >= 0.0)) throw ParameterError("observation range must be >= 0");
  if (!(area.resolution > 0.0)) throw ParameterError("grid resolution must be positive");
  if (area.shape == AreaSpec::Shape::Rectangle && !(area.width > 0.0 && area.height > 0.0)) {
    throw ParameterError("area width and height must be positive");
  }
  if (area.shape == AreaSpec::Shape::Disc && !(area.radius > 0.0)) {
    throw ParameterError("area radius must be positive");
  }
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    if (!(distance(sensors[i], sink) > 0.0)) {
      throw ParameterError("sensor " + std::to_string(i) + " coincides with the sink");
    }
  }
  if (kind == ScenarioKind::SinglePrecharged && sensors.size() != 1) {
    throw ParameterError("single-precharged scenario needs exactly one sensor");
  }
}

SingleSensorScenario ScenarioConfig::single_sensor() const {
  if (sensors.size() != 1) throw ParameterError("single_sensor(): scenario has " +
                                                std::to_string(sensors.size()) + " sensors");
  SingleSensorScenario s;
  s.channel = channel;
  s.correlation = correlation;
  s.energy = energy;
  s.timing = timing;
  s.distance_m = distance(sensors[0], sink);
  s.area_radius_m = area.shape == AreaSpec::Shape::Disc ? area.radius
                                                         : std::sqrt(area.area() / std::numbers::pi);
  s.eta = eta;
  return s;
}

ChannelParams default_channel() {
  ChannelParams ch;
  ch.tx_power_mw = dbm_to_mw(15.0);
  ch.path_loss_exp = 4.0;
  ch.noise_power_mw = dbm_to_mw(-100.0);
  ch.sink_intensity = 1e-4;
  ch.reuse_prob = 1.0;
  ch.bandwidth_hz = 10e6;
  ch.data_size_edge_bits = 6000.0;
  ch.data_size_local_bits = 500.0;
  ch.slot_duration_s = 0.01;
  ch.max_retx = 3;
  return ch;
}

CorrelationParams default_correlation() { return {0.0045, 1.35, 0.6}; }

TimingParams default_timing() { return {8, 1, 2, 20}; }

EnergyParams default_single_energy() {
  EnergyParams e;
  e.sense = 10.0;
  e.tx = 13.55;
  e.compute = 12.0;
  e.battery_budget = 400.0;
  e.battery_cap = 400.0;
  return e;
}

EnergyParams default_multi_energy() {
  EnergyParams e;
  e.sense = 10.0;
  e.tx = 13.55;
  e.compute = 20.0;
  e.battery_budget = 0.0;
  e.battery_cap = 50.0;
  e.harvest_min = 1.5;
  e.harvest_max = 4.5;
  return e;
}

SingleSensorScenario default_single_scenario() {
  SingleSensorScenario s;
  s.channel = default_channel();
  s.correlation = default_correlation();
  s.energy = default_single_energy();
  s.timing = default_timing();
  s.distance_m = 100.0;
  s.area_radius_m = 50.0;
  s.eta = 0.9;
  return s;
}

ScenarioConfig make_single_scenario(const SingleSensorScenario& s) {
  ScenarioConfig c;
  c.kind = ScenarioKind::SinglePrecharged;
  c.channel = s.channel;
  c.correlation = s.correlation;
  c.energy = s.energy;
  c.timing = s.timing;
  c.battery = BatteryModel::PreCharged;
  c.budget = BudgetEnforcement::Expected;
  c.eta = s.eta;
  c.area.shape = AreaSpec::Shape::Disc;
  c.area.radius = s.area_radius_m;
  c.area.center = {0.0, 0.0};
  c.sensors = {Point2{0.0, 0.0}};
  c.sink = {s.distance_m, 0.0};
  return c;
}

ScenarioConfig default_multi_scenario(std::size_t num_sensors, std::uint64_t placement_seed) {
  ScenarioConfig c;
  c.kind = ScenarioKind::MultiEh;
  c.channel = default_channel();
  c.correlation = default_correlation();
  c.energy = default_multi_energy();
  c.timing = default_timing();
  c.battery = BatteryModel::EnergyHarvesting;
  c.area.shape = AreaSpec::Shape::Rectangle;
  c.area.width = 250.0;
  c.area.height = 250.0;
  c.sink = {125.0, 125.0};
  c.sensors = place_sensors_uniform(num_sensors, 250.0, 250.0, c.sink, placement_seed);
  return c;
}

std::vector<Point2> place_sensors_uniform(std::size_t n, double width, double height, Point2 sink,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, stream::kPlacement));
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, height);
  std::vector<Point2> out;
  out.reserve(n);
  while (out.size() < n) {
    const Point2 p{ux(rng), uy(rng)};
    if (distance(p, sink) >= 1.0) out.push_back(p);
  }
  return out;
}

}  // namespace freshcov
