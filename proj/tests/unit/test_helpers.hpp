#pragma once

#include <vector>

#include "freshcov/scenario.hpp"

namespace testutil {

// Small EH network on a w x w area with a perfect channel unless told otherwise.
inline freshcov::ScenarioConfig small_eh(std::vector<freshcov::Point2> sensors, double w = 60.0,
                                         bool perfect_channel = true) {
  auto c = freshcov::default_multi_scenario(1, 1);
  c.area.width = c.area.height = w;
  c.sink = {w / 2.0, w / 2.0};
  c.sensors = std::move(sensors);
  if (perfect_channel) {
    c.channel.noise_power_mw = 0.0;
    c.channel.sink_intensity = 0.0;
  }
  return c;
}

inline freshcov::ScenarioConfig single_precharged(double distance = 100.0) {
  auto s = freshcov::default_single_scenario();
  s.distance_m = distance;
  return freshcov::make_single_scenario(s);
}

}  // namespace testutil
