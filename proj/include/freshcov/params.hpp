#pragma once

#include <cmath>
#include <cstdint>

namespace freshcov {

enum class ComputeMode { Edge, Local };

constexpr const char* to_string(ComputeMode m) { return m == ComputeMode::Edge ? "EC" : "LC"; }

inline double dbm_to_mw(double dbm) noexcept { return std::pow(10.0, dbm / 10.0); }

/// Physical-layer parameters. Powers are linear (mW); use dbm_to_mw when
/// reading configuration values given in dBm.
struct ChannelParams {
  double tx_power_mw = 0.0;
  double path_loss_exp = 4.0;
  double noise_power_mw = 0.0;
  double sink_intensity = 0.0;  ///< sinks per m^2
  double reuse_prob = 1.0;      ///< p_t
  double bandwidth_hz = 0.0;
  double data_size_edge_bits = 0.0;
  double data_size_local_bits = 0.0;
  double slot_duration_s = 0.0;
  int max_retx = 1;  ///< delta: attempts per data item

  double interferer_intensity() const noexcept { return sink_intensity * reuse_prob; }
  double data_size(ComputeMode m) const noexcept {
    return m == ComputeMode::Edge ? data_size_edge_bits : data_size_local_bits;
  }
  /// Target rate L/Delta in bit/s.
  double target_rate(ComputeMode m) const noexcept { return data_size(m) / slot_duration_s; }

  /// Throws ParameterError when an invariant does not hold.
  void validate() const;
};

struct CorrelationParams {
  double beta1 = 0.0;          ///< spatial weight, 1/m
  double beta2 = 0.0;          ///< temporal weight, 1/s
  double err_threshold = 0.0;  ///< epsilon_0

  void validate() const;
};

/// Energies in mJ. `harvest_*` are per-slot bounds of the uniform arrival.
struct EnergyParams {
  double sense = 0.0;
  double tx = 0.0;
  double compute = 0.0;
  double battery_budget = 0.0;  ///< B_th, pre-charged model
  double battery_cap = 0.0;     ///< B_max, EH model
  double harvest_min = 0.0;
  double harvest_max = 0.0;

  double mean_harvest() const noexcept { return 0.5 * (harvest_min + harvest_max); }
  void validate() const;
};

/// Durations in slots.
struct TimingParams {
  int round_len = 8;
  int compute_slots_edge = 1;
  int compute_slots_local = 2;
  int rounds_per_episode = 20;

  int compute_slots(ComputeMode m) const noexcept {
    return m == ComputeMode::Edge ? compute_slots_edge : compute_slots_local;
  }
  std::int64_t episode_slots() const noexcept {
    return static_cast<std::int64_t>(rounds_per_episode) * round_len;
  }
  /// Checks the slot ordering and that a full sense/transmit/compute cycle
  /// with `max_retx` attempts fits in one round.
  void validate(int max_retx) const;
};

}  // namespace freshcov
