#pragma once

#include <random>

#include "freshcov/params.hpp"

namespace freshcov {

/// SINR threshold 2^{R/W} - 1 for the mode's target rate. Throws
/// ParameterError if it is not finite.
double sinr_threshold(ComputeMode mode, const ChannelParams& ch);

/// Per-attempt outage probability of a Rayleigh-faded uplink at `distance`
/// metres from the sink, with interferers forming a PPP of intensity
/// lambda * p_t that transmit at the tagged sensor's power:
///
///   p_o = 1 - exp(-A sigma^2 - pi lambda_I (A P)^{2/alpha} (2 pi / alpha) / sin(2 pi / alpha)),
///   A   = (2^{R/W} - 1) d^alpha / P.
double outage_probability(ComputeMode mode, double distance, const ChannelParams& ch);

/// Draws single-attempt outcomes from the underlying geometry instead of the
/// closed form: a fresh PPP interferer field (nearest first), unit-mean
/// exponential fades on every link, and a rate test against the target rate.
///
/// The field is truncated at the radius beyond which the neglected mean
/// interference term A * E[I_tail] falls below `tail_tolerance`; since
/// 1 - e^{-x} <= x this bounds the truncation bias on the outage probability.
class GeometricOutageSampler {
 public:
  GeometricOutageSampler(ComputeMode mode, double distance, const ChannelParams& ch,
                         double tail_tolerance = 1e-3);

  /// True when the attempt is in outage.
  bool sample(std::mt19937_64& rng) const;

  double truncation_radius() const noexcept { return truncation_radius_; }
  /// Mean number of interferers inside the truncation disc.
  double mean_interferers() const noexcept;

 private:
  double tx_power_;
  double alpha_;
  double noise_;
  double intensity_;
  double path_gain_;       // d^{-alpha}
  double threshold_;       // 2^{R/W} - 1
  double truncation_radius_;
  double truncation_r2_;
};

}  // namespace freshcov
