#pragma once

namespace freshcov {

/// One slot of battery evolution: consume, then harvest, then cap.
/// `consumed` must not exceed `level`; the caller is responsible for only
/// starting an operation the battery can pay for.
double battery_step(double level, double consumed, double harvested, double cap);

}  // namespace freshcov
