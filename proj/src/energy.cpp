#include "freshcov/energy.hpp"

#include <algorithm>
#include <string>

#include "freshcov/errors.hpp"

namespace freshcov {

double battery_step(double level, double consumed, double harvested, double cap) {
  if (level < 0.0 || level > cap) {
    throw ContractViolation("battery_step: level " + std::to_string(level) + " outside [0, cap]");
  }
  if (consumed < 0.0 || harvested < 0.0) throw ContractViolation("battery_step: negative energy");
  if (consumed > level) {
    throw ContractViolation("battery_step: consumption " + std::to_string(consumed) +
                            " exceeds battery level " + std::to_string(level));
  }
  return std::min(level - consumed + harvested, cap);
}

}  // namespace freshcov
