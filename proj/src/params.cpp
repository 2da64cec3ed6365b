#include "freshcov/params.hpp"

#include <cmath>
#include <string>

#include "freshcov/errors.hpp"

namespace freshcov {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void ChannelParams::validate() const {
  require(std::isfinite(tx_power_mw) && tx_power_mw > 0.0, "tx power must be positive");
  require(std::isfinite(path_loss_exp) && path_loss_exp > 2.0,
          "path-loss exponent must exceed 2");
  require(finite_nonneg(noise_power_mw), "noise power must be non-negative");
  require(finite_nonneg(sink_intensity), "sink intensity must be non-negative");
  require(reuse_prob >= 0.0 && reuse_prob <= 1.0, "reuse probability must be in [0,1]");
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth must be positive");
  require(std::isfinite(slot_duration_s) && slot_duration_s > 0.0,
          "slot duration must be positive");
  require(data_size_local_bits > 0.0, "local output size must be positive");
  require(std::isfinite(data_size_edge_bits) && data_size_edge_bits > data_size_local_bits,
          "edge data size must exceed local output size");
  require(max_retx >= 1, "max_retx must be at least 1");
}

void CorrelationParams::validate() const {
  require(std::isfinite(beta1) && beta1 > 0.0, "beta1 must be positive");
  require(std::isfinite(beta2) && beta2 > 0.0, "beta2 must be positive");
  require(err_threshold > 0.0 && err_threshold < 1.0, "error threshold must be in (0,1)");
}

void EnergyParams::validate() const {
  require(finite_nonneg(sense) && finite_nonneg(tx) && finite_nonneg(compute),
          "per-operation energies must be non-negative");
  require(finite_nonneg(battery_budget) && finite_nonneg(battery_cap),
          "battery sizes must be non-negative");
  require(finite_nonneg(harvest_min) && finite_nonneg(harvest_max),
          "harvest bounds must be non-negative");
  require(harvest_min <= harvest_max, "harvest_min must not exceed harvest_max");
}

void TimingParams::validate(int max_retx) const {
  require(round_len >= 1, "round length must be at least one slot");
  require(compute_slots_edge >= 1, "edge compute time must be at least one slot");
  require(compute_slots_edge < compute_slots_local,
          "edge compute time must be shorter than local compute time");
  require(rounds_per_episode >= 1, "rounds per episode must be at least 1");
  require(1 + max_retx + compute_slots_local <= round_len,
          "1 + max_retx + local compute slots must fit in one round");
}

}  // namespace freshcov
