#include "ppp_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

namespace {
double sinr_threshold(const PppLink& l) { return std::exp2(l.bits / (l.slot_s * l.bandwidth_hz)) - 1.0; }
}  // namespace

double ppp_disc_radius(const PppLink& l, double tail_tolerance) {
  // Mean interference (over P) outside radius R: 2 pi lambda R^{2-alpha} / (alpha - 2).
  const double scale = sinr_threshold(l) * std::pow(l.distance, l.alpha);
  const double k = scale * 2.0 * std::numbers::pi * l.intensity / ((l.alpha - 2.0) * tail_tolerance);
  return std::max(2.0 * l.distance, std::pow(k, 1.0 / (l.alpha - 2.0)));
}

PppEstimate ppp_outage(const PppLink& l, std::uint64_t trials, std::uint64_t seed, double tail_tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> fade(1.0);

  const double theta = sinr_threshold(l);
  const double radius = l.intensity > 0.0 ? ppp_disc_radius(l, tail_tolerance) : 0.0;
  const double r2max = radius * radius;
  const double mean_n = l.intensity * std::numbers::pi * r2max;
  std::poisson_distribution<long long> count(mean_n > 0.0 ? mean_n : 1.0);
  const double half_alpha = 0.5 * l.alpha;
  const double signal_gain = std::pow(l.distance, -l.alpha);

  std::uint64_t outages = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    // Success iff h d^-a / (noise/P + sum g r^-a) >= theta.
    const double h = fade(rng);
    const double room = h * signal_gain / theta - l.noise_mw / l.tx_power_mw;
    if (room < 0.0) {
      ++outages;
      continue;
    }
    const long long n = mean_n > 0.0 ? count(rng) : 0;
    double interference = 0.0;
    bool out = false;
    for (long long k = 0; k < n; ++k) {
      const double r2 = r2max * u(rng);
      const double g = fade(rng);
      interference += g * (half_alpha == 2.0 ? 1.0 / (r2 * r2) : std::pow(r2, -half_alpha));
      if (interference > room) {
        out = true;
        break;
      }
    }
    if (out) ++outages;
  }
  return {static_cast<double>(outages) / static_cast<double>(trials), trials, radius, mean_n};
}

}  // namespace oracle
