#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freshcov/analysis.hpp"
#include "freshcov/errors.hpp"
#include "freshcov/simulator.hpp"
#include "test_helpers.hpp"

using namespace freshcov;

namespace {

std::vector<std::int64_t> sink_ages(const EpisodeTrace& tr, std::size_t sensor) {
  std::vector<std::int64_t> out;
  for (std::size_t i = sensor; i < tr.sink_age.size(); i += tr.num_sensors) out.push_back(tr.sink_age[i]);
  return out;
}

bool same_trace(const EpisodeTrace& a, const EpisodeTrace& b) {
  if (a.coverage != b.coverage || a.applied != b.applied || a.rewards != b.rewards) return false;
  if (a.updates.size() != b.updates.size()) return false;
  for (std::size_t i = 0; i < a.updates.size(); ++i) {
    const auto &x = a.updates[i], &y = b.updates[i];
    if (x.slot != y.slot || x.sensor != y.sensor || x.mode != y.mode || x.gen_slot != y.gen_slot ||
        x.attempts != y.attempts) {
      return false;
    }
  }
  for (std::size_t n = 0; n < a.sensors.size(); ++n) {
    if (a.sensors[n].consumed != b.sensors[n].consumed || a.sensors[n].harvested != b.sensors[n].harvested) return false;
  }
  return a.battery == b.battery && a.sink_age == b.sink_age;
}

}  // namespace

TEST(Simulator, IdlePolicyCoversNothingAndSpendsNothing) {
  const auto cfg = default_multi_scenario(5, 3);
  RunOptions o;
  o.record_sensor_series = true;
  const auto tr = run_episode(cfg, PolicySpec::idle(), 1, o);
  ASSERT_EQ(tr.num_slots(), cfg.timing.episode_slots());
  EXPECT_TRUE(std::all_of(tr.coverage.begin(), tr.coverage.end(), [](double c) { return c == 0.0; }));
  for (const auto& s : tr.sensors) {
    EXPECT_EQ(s.consumed, 0.0);
    EXPECT_EQ(s.sensings, 0u);
  }
  for (double r : tr.rewards) EXPECT_EQ(r, -8.0);
}

TEST(Simulator, EdgeUpdateAgeIsThreeOnPerfectLink) {
  const auto cfg = testutil::small_eh({{10, 30}});
  RunOptions o;
  o.record_sensor_series = true;
  o.rounds = 1;
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Edge), 1, o);
  ASSERT_EQ(tr.updates.size(), 1u);
  EXPECT_EQ(tr.updates[0].slot, 2);
  const auto ages = sink_ages(tr, 0);
  EXPECT_EQ(ages[1], -1);
  EXPECT_EQ(ages[2], 3);
  EXPECT_EQ(ages[7], 8);
}

TEST(Simulator, LocalUpdatesArePeriodic) {
  auto s = default_single_scenario();
  s.channel.max_retx = 1;
  s.channel.noise_power_mw = 0.0;
  s.channel.sink_intensity = 0.0;
  s.energy.battery_budget = 1e6;
  auto cfg = make_single_scenario(s);
  RunOptions o;
  o.record_sensor_series = true;
  o.rounds = 10;
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Local), 4, o);
  const auto ages = sink_ages(tr, 0);
  const int tr_len = 8, tl = 2;
  for (std::size_t t = 16; t + tr_len < ages.size(); ++t) EXPECT_EQ(ages[t], ages[t + tr_len]);
  EXPECT_EQ(*std::max_element(ages.begin() + 8, ages.end()), tr_len + 1 + tl);
  EXPECT_EQ(ages[3], 2 + tl);
}

TEST(Simulator, EnergyWaitAndDropPattern) {
  // tau_r = 6, tau_e = 1, tau_l = 2, delta = 2; harvest fixed at 4 mJ per slot.
  auto cfg = testutil::small_eh({{10, 30}});
  cfg.timing = {6, 1, 2, 4};
  cfg.channel.max_retx = 2;
  cfg.energy.battery_cap = 36.0;
  cfg.energy.harvest_min = cfg.energy.harvest_max = 4.0;
  Simulator sim(cfg);
  RunOptions o;
  o.record_sensor_series = true;
  o.outage_script = [](std::size_t, ComputeMode, std::int64_t slot, int) { return slot >= 12; };
  sim.reset(1, o);
  sim.step_round(std::vector<Action>{Action::Local});
  sim.step_round(std::vector<Action>{Action::Edge});
  sim.step_round(std::vector<Action>{Action::Edge});
  const auto& tr = sim.trace();
  ASSERT_EQ(tr.updates.size(), 2u);
  EXPECT_EQ(tr.updates[0].mode, ComputeMode::Local);
  EXPECT_EQ(tr.updates[0].slot, 3);
  EXPECT_EQ(tr.updates[1].mode, ComputeMode::Edge);
  EXPECT_EQ(tr.updates[1].gen_slot, 6);
  EXPECT_EQ(tr.updates[1].slot, 9);  // one slot spent waiting for transmit energy
  EXPECT_GE(tr.sensors[0].energy_waits, 1u);
  // Third round: the item is still waiting for energy for its second attempt.
  EXPECT_TRUE(sim.observe()[0].busy);
  sim.step_round(std::vector<Action>{Action::Edge});
  EXPECT_EQ(sim.trace().sensors[0].illegal_actions, 1u);
  EXPECT_EQ(sim.trace().sensors[0].drops, 1u);
  EXPECT_EQ(sim.trace().updates.size(), 2u);
  EXPECT_EQ(sim.trace().sensors[0].max_attempts_per_item, 2u);
}

TEST(Simulator, AttemptsCappedAndDropped) {
  auto cfg = testutil::single_precharged();
  cfg.energy.battery_budget = 1e6;
  RunOptions o;
  o.rounds = 50;
  o.outage_script = [](std::size_t, ComputeMode, std::int64_t, int) { return true; };
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Edge), 2, o);
  EXPECT_TRUE(tr.updates.empty());
  EXPECT_EQ(tr.sensors[0].drops, 50u);
  EXPECT_EQ(tr.sensors[0].tx_attempts, 150u);
  EXPECT_EQ(tr.sensors[0].max_attempts_per_item, 3u);
}

TEST(Simulator, HardBudgetIsNeverExceeded) {
  auto cfg = testutil::single_precharged();
  cfg.budget = BudgetEnforcement::Hard;
  cfg.energy.battery_budget = 200.0;
  RunOptions o;
  o.rounds = 60;
  o.record_sensor_series = true;
  const auto tr = run_episode(cfg, PolicySpec::probability(1.0, 0.3), 5, o);
  for (double b : tr.battery) EXPECT_GE(b, -1e-9);
  EXPECT_GT(tr.sensors[0].budget_drops + tr.sensors[0].illegal_actions, 0u);
  // consumption per block of N_r rounds
  EXPECT_LE(tr.sensors[0].consumed, 3 * 200.0 + 1e-9);
}

TEST(Simulator, ConservationOfEnergy) {
  auto cfg = default_multi_scenario(8, 2);
  const auto tr = run_episode(cfg, PolicySpec::probability(0.7, 0.4), 3);
  for (const auto& s : tr.sensors) {
    const double expect = cfg.energy.sense * static_cast<double>(s.sensings) +
                          cfg.energy.compute * static_cast<double>(s.local_computes) +
                          cfg.energy.tx * static_cast<double>(s.tx_attempts);
    EXPECT_NEAR(s.consumed, expect, 1e-9 * std::max(1.0, expect));
  }
}

TEST(Simulator, Deterministic) {
  auto cfg = default_multi_scenario(6, 4);
  RunOptions o;
  o.record_sensor_series = true;
  const auto a = run_episode(cfg, PolicySpec::probability(0.6, 0.5), 77, o);
  const auto b = run_episode(cfg, PolicySpec::probability(0.6, 0.5), 77, o);
  const auto c = run_episode(cfg, PolicySpec::probability(0.6, 0.5), 78, o);
  EXPECT_TRUE(same_trace(a, b));
  EXPECT_FALSE(same_trace(a, c));
}

TEST(Simulator, BlanketCoverageAfterFirstUpdate) {
  auto cfg = testutil::small_eh({{15, 20}}, 40.0);
  cfg.energy.battery_cap = 1e6;
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Edge), 1);
  ASSERT_FALSE(tr.updates.empty());
  for (std::int64_t t = 0; t < tr.num_slots(); ++t) {
    EXPECT_EQ(tr.coverage[static_cast<std::size_t>(t)], t >= tr.updates[0].slot ? 1.0 : 0.0) << t;
  }
}

TEST(Simulator, AnalyticOutageRate) {
  auto cfg = testutil::single_precharged();
  RunOptions o;
  o.rounds = 60000;  // about 2.05 attempts per item
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Edge), 6, o);
  const auto& s = tr.sensors[0];
  ASSERT_GE(s.tx_attempts, 100000u);
  const double p = outage_probability(ComputeMode::Edge, 100.0, cfg.channel);
  const double rate = static_cast<double>(s.tx_failures) / static_cast<double>(s.tx_attempts);
  EXPECT_NEAR(rate, p, 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(s.tx_attempts)));
}

TEST(Simulator, GeometricChannelMatchesAnalytic) {
  auto cfg = testutil::single_precharged();
  cfg.fidelity = ChannelFidelity::Geometric;
  RunOptions o;
  o.rounds = 5000;
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Local), 6, o);
  const auto& s = tr.sensors[0];
  const double p = outage_probability(ComputeMode::Local, 100.0, cfg.channel);
  EXPECT_NEAR(static_cast<double>(s.tx_failures) / static_cast<double>(s.tx_attempts), p, 0.02);
}

TEST(Simulator, EhBatteryStaysInBounds) {
  auto cfg = default_multi_scenario(10, 1);
  RunOptions o;
  o.record_sensor_series = true;
  const auto tr = run_episode(cfg, PolicySpec::probability(1.0, 0.5), 12, o);
  for (double b : tr.battery) {
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, cfg.energy.battery_cap);
  }
}

TEST(Simulator, IllegalRequestsAreCoerced) {
  auto cfg = default_multi_scenario(3, 1);
  cfg.energy.battery_cap = 5.0;  // below E_S
  Simulator sim(cfg);
  const std::vector<Action> acts{Action::Edge, Action::Local, Action::Idle};
  const auto out = sim.step_round(acts);
  EXPECT_EQ(out.illegal, 2);
  EXPECT_EQ(sim.trace().total_illegal(), 2u);
  EXPECT_EQ(sim.trace().applied[0], Action::Idle);
  EXPECT_EQ(sim.trace().requested[0], Action::Edge);
  EXPECT_THROW(sim.step_round(std::vector<Action>{Action::Idle}), ContractViolation);
}

TEST(Simulator, DoneAfterAllRounds) {
  Simulator sim(default_multi_scenario(2, 1));
  const std::vector<Action> idle(2, Action::Idle);
  for (int r = 0; r < 20; ++r) EXPECT_EQ(sim.step_round(idle).done, r == 19);
  EXPECT_THROW(sim.step_round(idle), ContractViolation);
}

TEST(Simulator, FixedRadiusScoringIsFlatWithinRound) {
  auto cfg = default_multi_scenario(1, 1);
  cfg.sensors = {{125, 100}};
  cfg.channel.noise_power_mw = 0.0;
  cfg.channel.sink_intensity = 0.0;
  RunOptions o;
  o.track_cic = true;
  o.rounds = 3;
  const auto tr = run_episode(cfg, PolicySpec::always(ComputeMode::Edge), 1, o);
  ASSERT_FALSE(tr.updates.empty());
  const auto t0 = static_cast<std::size_t>(tr.updates[0].slot);
  bool decays = false;
  for (std::size_t t = t0 + 1; t < 8; ++t) {
    EXPECT_EQ(tr.cic_coverage[t], tr.cic_coverage[t0]);
    EXPECT_LE(tr.coverage[t], tr.coverage[t - 1]);
    decays |= tr.coverage[t] < tr.coverage[t - 1];
  }
  EXPECT_TRUE(decays);
  EXPECT_NEAR(tr.cic_coverage[t0], std::numbers::pi * 77.8 * 77.8 / 62500.0, 0.02 * 0.3043);
}

TEST(Estimate, IdleIsZeroAndThreadsDoNotMatter) {
  const auto cfg = default_multi_scenario(4, 1);
  const auto idle = estimate_eta_coverage(cfg, PolicySpec::idle(), 0.5, 3, 1);
  EXPECT_EQ(idle.p_c, 0.0);
  EXPECT_EQ(idle.samples, 3u * 160u);
  const auto a = estimate_eta_coverage(cfg, PolicySpec::probability(0.8, 0.5), 0.3, 6, 9, {}, 1);
  const auto b = estimate_eta_coverage(cfg, PolicySpec::probability(0.8, 0.5), 0.3, 6, 9, {}, 3);
  EXPECT_EQ(a.per_replication, b.per_replication);
  EXPECT_EQ(a.p_c, b.p_c);
  EXPECT_NEAR(a.half_width, 1.96 * std::sqrt(a.p_c * (1 - a.p_c) / 960.0), 1e-12);
  EXPECT_THROW(estimate_eta_coverage(cfg, PolicySpec::idle(), 0.5, 0, 1), ParameterError);
}

TEST(Estimate, SingleSensorAgreesWithClosedForm) {
  const auto scn = default_single_scenario();
  const auto opt = optimize_single(scn);
  RunOptions o;
  o.rounds = 20000;
  const auto est = estimate_eta_coverage(make_single_scenario(scn), PolicySpec::probability(opt.p_s, opt.p_e), scn.eta,
                                         1, 3, o);
  EXPECT_NEAR(est.p_c, opt.result.eta_coverage, 0.02);
}

TEST(Simulator, WaitingTimeSeenInObservation) {
  auto cfg = testutil::small_eh({{10, 30}, {50, 30}});
  cfg.timing.compute_slots_edge = 1;
  Simulator sim(cfg);
  sim.step_round(std::vector<Action>{Action::Edge, Action::Edge});
  // both offloads finish inside the round
  EXPECT_TRUE(sim.queue().empty());
  for (const auto& v : sim.observe()) EXPECT_EQ(v.ec_wait, 0);
}
