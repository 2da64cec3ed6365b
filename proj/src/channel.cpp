#include "freshcov/channel.hpp"

#include <cmath>
#include <numbers>

#include "freshcov/errors.hpp"

namespace freshcov {

double sinr_threshold(ComputeMode mode, const ChannelParams& ch) {
  const double exponent = ch.target_rate(mode) / ch.bandwidth_hz;
  const double theta = std::expm1(exponent * std::numbers::ln2);
  if (!std::isfinite(theta)) {
    throw ParameterError("2^(R/W) overflows: target rate too large for the bandwidth");
  }
  return theta;
}

double outage_probability(ComputeMode mode, double distance, const ChannelParams& ch) {
  if (!(distance > 0.0)) throw ContractViolation("outage_probability: distance must be > 0");
  const double alpha = ch.path_loss_exp;
  const double theta = sinr_threshold(mode, ch);
  const double a = theta * std::pow(distance, alpha) / ch.tx_power_mw;
  const double shape = 2.0 * std::numbers::pi / (alpha * std::sin(2.0 * std::numbers::pi / alpha));
  const double exponent =
      a * ch.noise_power_mw +
      std::numbers::pi * ch.interferer_intensity() * std::pow(a * ch.tx_power_mw, 2.0 / alpha) * shape;
  if (!std::isfinite(exponent)) {
    if (std::isinf(exponent) && exponent > 0) return 1.0;
    throw ParameterError("outage probability is not finite for these parameters");
  }
  return -std::expm1(-exponent);
}

GeometricOutageSampler::GeometricOutageSampler(ComputeMode mode, double distance,
                                               const ChannelParams& ch, double tail_tolerance)
    : tx_power_(ch.tx_power_mw),
      alpha_(ch.path_loss_exp),
      noise_(ch.noise_power_mw),
      intensity_(ch.interferer_intensity()),
      path_gain_(std::pow(distance, -ch.path_loss_exp)),
      threshold_(sinr_threshold(mode, ch)),
      truncation_radius_(0.0),
      truncation_r2_(0.0) {
  if (!(distance > 0.0)) throw ContractViolation("GeometricOutageSampler: distance must be > 0");
  if (!(tail_tolerance > 0.0)) throw ContractViolation("tail tolerance must be positive");
  if (intensity_ > 0.0) {
    // A * E[I beyond R] = A P 2 pi lambda R^{2-alpha} / (alpha - 2), with A P = theta d^alpha.
    const double ap = threshold_ / path_gain_;
    const double scale = ap * 2.0 * std::numbers::pi * intensity_ / ((alpha_ - 2.0) * tail_tolerance);
    truncation_radius_ = std::pow(scale, 1.0 / (alpha_ - 2.0));
    truncation_r2_ = truncation_radius_ * truncation_radius_;
  }
}

double GeometricOutageSampler::mean_interferers() const noexcept {
  return intensity_ * std::numbers::pi * truncation_r2_;
}

bool GeometricOutageSampler::sample(std::mt19937_64& rng) const {
  std::exponential_distribution<double> unit_exp(1.0);
  const double signal = tx_power_ * unit_exp(rng) * path_gain_;
  // Outage iff sigma^2 + I > signal / theta.
  const double budget = signal / threshold_ - noise_;
  if (budget < 0.0) return true;
  if (intensity_ <= 0.0) return false;

  // Squared distances of PPP points in increasing order: pi lambda r_k^2 is a
  // unit-rate Poisson arrival sequence.
  const double half_alpha = 0.5 * alpha_;
  const double inv_area_rate = 1.0 / (std::numbers::pi * intensity_);
  double arrival = 0.0;
  double interference = 0.0;
  for (;;) {
    arrival += unit_exp(rng);
    const double r2 = arrival * inv_area_rate;
    if (r2 > truncation_r2_) return false;
    const double gain = half_alpha == 2.0 ? 1.0 / (r2 * r2) : std::pow(r2, -half_alpha);
    interference += tx_power_ * unit_exp(rng) * gain;
    if (interference > budget) return true;
  }
}

}  // namespace freshcov
