// Sanity checks of the test oracles themselves against textbook results.
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ppp_oracle.hpp"
#include "renewal_oracle.hpp"

namespace {

// Rayleigh + PPP outage: 1 - exp(-theta d^a N/P - lambda pi d^2 theta^(2/a) G(1+2/a) G(1-2/a)).
double textbook_outage(const oracle::PppLink& l) {
  const double theta = std::exp2(l.bits / (l.slot_s * l.bandwidth_hz)) - 1.0;
  const double d = 2.0 / l.alpha;
  const double e = theta * std::pow(l.distance, l.alpha) * l.noise_mw / l.tx_power_mw +
                   l.intensity * std::numbers::pi * l.distance * l.distance * std::pow(theta, d) *
                       std::tgamma(1.0 + d) * std::tgamma(1.0 - d);
  return 1.0 - std::exp(-e);
}

oracle::PppLink link(double alpha, double noise, double intensity) {
  oracle::PppLink l;
  l.tx_power_mw = 31.6227766;
  l.alpha = alpha;
  l.noise_mw = noise;
  l.intensity = intensity;
  l.distance = 60.0;
  l.bits = 2000;
  l.bandwidth_hz = 1e5;
  l.slot_s = 0.01;
  return l;
}

}  // namespace

TEST(PppOracle, NoiseOnly) {
  const auto l = link(4.0, 3e-7, 0.0);
  const auto est = oracle::ppp_outage(l, 200000, 1);
  const double p = textbook_outage(l);
  EXPECT_NEAR(est.outage, p, 4.0 * std::sqrt(p * (1 - p) / 2e5) + 1e-3);
}

TEST(PppOracle, InterferenceLimited) {
  for (double alpha : {4.0, 5.0}) {
    const auto l = link(alpha, 0.0, 5e-5);
    const auto est = oracle::ppp_outage(l, 100000, 2);
    const double p = textbook_outage(l);
    EXPECT_GT(p, 0.05);
    EXPECT_NEAR(est.outage, p, 4.0 * std::sqrt(p * (1 - p) / 1e5) + 2e-3) << alpha;
    EXPECT_GE(est.radius, 2.0 * l.distance);
  }
}

TEST(RenewalOracle, PerfectLinkIsPeriodic) {
  oracle::RenewalParams p;
  p.outage = {0.0, 0.0};
  p.compute = {1, 2};
  p.max_retx = 3;
  p.v_slots = 5;
  const auto s = oracle::run_renewal(p, 10000, 3);
  EXPECT_EQ(s.updates, 10000u);
  EXPECT_NEAR(s.mean_interval, 8.0, 1e-9);
  // ages cycle 3..10, five of eight exceed 5
  EXPECT_NEAR(s.violation_prob, 5.0 / 8.0, 1e-3);
}

TEST(RenewalOracle, UpdateRateMatchesGeometry) {
  oracle::RenewalParams p;
  p.p_s = 0.5;
  p.p_e = 1.0;
  p.outage = {0.4, 0.0};
  p.max_retx = 2;
  p.v_slots = 100;
  const auto s = oracle::run_renewal(p, 400000, 4);
  const double rate = 0.5 * (1.0 - 0.4 * 0.4);
  EXPECT_NEAR(s.mean_interval, 8.0 / rate, 0.02 * 8.0 / rate);
}
