#include "freshcov/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "freshcov/energy.hpp"
#include "freshcov/errors.hpp"
#include "freshcov/parallel.hpp"
#include "freshcov/rng.hpp"

namespace freshcov {

double EpisodeTrace::eta_coverage(double target) const {
  const auto& s = scored_coverage();
  if (s.empty()) return 0.0;
  const auto hits = std::count_if(s.begin(), s.end(), [&](double c) { return c >= target; });
  return static_cast<double>(hits) / static_cast<double>(s.size());
}

std::uint64_t EpisodeTrace::total_illegal() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : sensors) n += s.illegal_actions;
  return n;
}

double round_reward(std::span<const double> coverage, double eta, double penalty) {
  double r = 0.0;
  for (double c : coverage) r += c >= eta ? 1.0 : -penalty;
  return r;
}

Simulator::Simulator(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  grid_ = cfg_.area.make_grid();
  tracker_ = CoverageTracker::temporal(grid_, cfg_.sensors, cfg_.correlation, cfg_.channel.slot_duration_s);
  const std::size_t n = cfg_.sensors.size();
  outage_.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = distance(cfg_.sensors[i], cfg_.sink);
    outage_[2 * i] = outage_probability(ComputeMode::Edge, d, cfg_.channel);
    outage_[2 * i + 1] = outage_probability(ComputeMode::Local, d, cfg_.channel);
    if (cfg_.fidelity == ChannelFidelity::Geometric) {
      samplers_.emplace_back(ComputeMode::Edge, d, cfg_.channel);
      samplers_.emplace_back(ComputeMode::Local, d, cfg_.channel);
    }
  }
  sensors_.resize(n);
  item_attempts_.assign(n, 0);
  slot_cost_.assign(n, 0.0);
  reset(0);
}

void Simulator::reset(std::uint64_t seed, RunOptions opts) {
  opts_ = std::move(opts);
  const std::size_t n = sensors_.size();
  track_cic_ = opts_.track_cic || cfg_.coverage_model == CoverageModel::Cic;
  if (track_cic_ && cic_tracker_.num_points() == 0) {
    cic_tracker_ = CoverageTracker::fixed_radius(
        grid_, cfg_.sensors, cic_radius(cfg_.correlation, cfg_.timing.round_len, cfg_.channel.slot_duration_s),
        cfg_.timing.round_len);
  }
  tracker_.reset();
  if (track_cic_) cic_tracker_.reset();
  queue_ = EcServerQueue(n, cfg_.timing.compute_slots_edge);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = sensors_[i];
    s = Sensor{};
    s.battery = cfg_.battery == BatteryModel::EnergyHarvesting ? cfg_.energy.battery_cap : 0.0;
    s.channel_rng.seed(derive_seed(seed, stream::kChannel, i));
    s.harvest_rng.seed(derive_seed(seed, stream::kHarvest, i));
  }
  std::fill(item_attempts_.begin(), item_attempts_.end(), 0);
  round_ = 0;
  slot_ = 0;
  total_rounds_ = opts_.rounds.value_or(cfg_.timing.rounds_per_episode);
  if (total_rounds_ < 0) throw ParameterError("number of rounds must be >= 0");

  trace_ = EpisodeTrace{};
  trace_.seed = seed;
  trace_.round_len = cfg_.timing.round_len;
  trace_.num_sensors = n;
  trace_.eta = cfg_.eta;
  trace_.penalty = cfg_.penalty;
  trace_.scoring = cfg_.coverage_model;
  trace_.sensors.assign(n, SensorCounters{});
  const auto slots = static_cast<std::size_t>(total_rounds_ * cfg_.timing.round_len);
  trace_.coverage.reserve(slots);
  if (track_cic_) trace_.cic_coverage.reserve(slots);
  trace_.rewards.reserve(static_cast<std::size_t>(total_rounds_));
}

bool Simulator::done() const noexcept { return round_ >= total_rounds_; }

double Simulator::budget_left(const Sensor& s) const { return cfg_.energy.battery_budget - s.budget_used; }

double Simulator::battery(std::size_t n) const {
  const auto& s = sensors_.at(n);
  return cfg_.battery == BatteryModel::EnergyHarvesting ? s.battery : budget_left(s);
}

bool Simulator::can_pay(const Sensor& s, double cost) const {
  if (cfg_.battery == BatteryModel::EnergyHarvesting) return s.battery >= cost;
  if (cfg_.budget == BudgetEnforcement::Expected) return true;
  return s.budget_used + cost <= cfg_.energy.battery_budget + 1e-9;
}

bool Simulator::sensor_can_act(const Sensor& s) const {
  return s.phase == Phase::Idle && can_pay(s, cfg_.energy.sense);
}

std::vector<SensorView> Simulator::observe() const {
  std::vector<SensorView> v(sensors_.size());
  for (std::size_t n = 0; n < sensors_.size(); ++n) {
    const auto& s = sensors_[n];
    auto& o = v[n];
    o.id = n;
    o.position = cfg_.sensors[n];
    o.battery = battery(n);
    if (s.sink_gen >= 0) o.sink_age = slot_ - s.sink_gen;
    if (s.sensor_gen >= 0) o.sensor_age = slot_ - s.sensor_gen;
    o.ec_wait = queue_.waiting_time(n);
    o.busy = s.phase != Phase::Idle;
    o.can_act = sensor_can_act(s);
  }
  return v;
}

void Simulator::pay(std::size_t n, double cost) {
  auto& s = sensors_[n];
  slot_cost_[n] += cost;
  s.budget_used += cost;
  if (cfg_.battery == BatteryModel::EnergyHarvesting) s.battery -= cost;
  trace_.sensors[n].consumed += cost;
}

bool Simulator::attempt_fails(std::size_t n, ComputeMode mode, std::int64_t t, int attempt) {
  if (opts_.outage_script) return opts_.outage_script(n, mode, t, attempt);
  const std::size_t k = 2 * n + (mode == ComputeMode::Local ? 1 : 0);
  if (cfg_.fidelity == ChannelFidelity::Geometric) return samplers_[k].sample(sensors_[n].channel_rng);
  return uniform01(sensors_[n].channel_rng) < outage_[k];
}

void Simulator::deliver(std::size_t n, ComputeMode mode, std::int64_t gen, std::int64_t t, int attempts) {
  auto& s = sensors_[n];
  trace_.updates.push_back({t, n, mode, gen, attempts});
  ++trace_.sensors[n].updates;
  if (gen <= s.sink_gen) return;
  s.sink_gen = gen;
  tracker_.refresh(n, gen);
  if (track_cic_) {
    const std::int64_t tr = cfg_.timing.round_len;
    cic_tracker_.refresh(n, (t / tr + 1) * tr);
  }
}

void Simulator::finish_item(std::size_t n) {
  auto& s = sensors_[n];
  s.phase = Phase::Idle;
  s.attempts = 0;
  s.compute_left = 0;
  s.compute_paid = false;
}

void Simulator::step_sensor(std::size_t n, std::int64_t t) {
  auto& s = sensors_[n];
  auto& c = trace_.sensors[n];
  const auto& e = cfg_.energy;
  auto starve = [&] {
    if (cfg_.battery == BatteryModel::EnergyHarvesting) {
      ++c.energy_waits;
    } else {
      ++c.budget_drops;
      finish_item(n);
    }
  };

  switch (s.phase) {
    case Phase::Idle:
      return;
    case Phase::Sense:
      if (!can_pay(s, e.sense)) return starve();
      pay(n, e.sense);
      ++c.sensings;
      s.item_gen = s.sensor_gen = t;
      s.attempts = 0;
      if (s.mode == ComputeMode::Local) {
        s.phase = Phase::Compute;
        s.compute_left = cfg_.timing.compute_slots_local;
        s.compute_paid = false;
      } else {
        s.phase = Phase::Transmit;
      }
      return;
    case Phase::Compute:
      if (!s.compute_paid) {
        if (!can_pay(s, e.compute)) return starve();
        pay(n, e.compute);
        ++c.local_computes;
        s.compute_paid = true;
      }
      if (--s.compute_left == 0) s.phase = Phase::Transmit;
      return;
    case Phase::Transmit: {
      if (!can_pay(s, e.tx)) return starve();
      pay(n, e.tx);
      ++s.attempts;
      ++c.tx_attempts;
      c.max_attempts_per_item = std::max<std::uint64_t>(c.max_attempts_per_item, static_cast<std::uint64_t>(s.attempts));
      if (!attempt_fails(n, s.mode, t, s.attempts)) {
        if (s.mode == ComputeMode::Local) {
          deliver(n, ComputeMode::Local, s.item_gen, t, s.attempts);
        } else {
          queue_.push(n, s.item_gen, t);
          item_attempts_[n] = s.attempts;
        }
        finish_item(n);
      } else {
        ++c.tx_failures;
        if (s.attempts >= cfg_.channel.max_retx) {
          ++c.drops;
          finish_item(n);
        }
      }
      return;
    }
  }
}

RoundOutcome Simulator::step_round(std::span<const Action> requested) {
  if (done()) throw ContractViolation("step_round: episode is over");
  const std::size_t n = sensors_.size();
  if (requested.size() != n) throw ContractViolation("step_round: action count does not match sensors");

  if (cfg_.battery == BatteryModel::PreCharged && round_ % cfg_.timing.rounds_per_episode == 0) {
    for (auto& s : sensors_) s.budget_used = 0.0;
  }
  const auto views = observe();
  auto decision = coerce(std::vector<Action>(requested.begin(), requested.end()), views);
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = trace_.sensors[i];
    if (decision.requested[i] != decision.applied[i]) ++c.illegal_actions;
    const Action a = decision.applied[i];
    if (a == Action::Idle) continue;
    auto& s = sensors_[i];
    s.phase = Phase::Sense;
    s.mode = a == Action::Edge ? ComputeMode::Edge : ComputeMode::Local;
    ++(a == Action::Edge ? c.decisions_edge : c.decisions_local);
  }
  trace_.requested.insert(trace_.requested.end(), decision.requested.begin(), decision.requested.end());
  trace_.applied.insert(trace_.applied.end(), decision.applied.begin(), decision.applied.end());

  const bool eh = cfg_.battery == BatteryModel::EnergyHarvesting;
  const double h_lo = cfg_.energy.harvest_min;
  const double h_span = cfg_.energy.harvest_max - cfg_.energy.harvest_min;
  for (int k = 0; k < cfg_.timing.round_len; ++k) {
    const std::int64_t t = slot_;
    tracker_.begin_slot(t);
    if (track_cic_) cic_tracker_.begin_slot(t);
    if (auto job = queue_.serve(t)) deliver(job->sensor, ComputeMode::Edge, job->gen_slot, t, item_attempts_[job->sensor]);
    std::fill(slot_cost_.begin(), slot_cost_.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) step_sensor(i, t);
    if (eh) {
      for (std::size_t i = 0; i < n; ++i) {
        auto& s = sensors_[i];
        const double h = h_lo + h_span * uniform01(s.harvest_rng);
        const double before = s.battery + slot_cost_[i];  // pay() already deducted
        const double after = battery_step(before, slot_cost_[i], h, cfg_.energy.battery_cap);
        trace_.sensors[i].harvested += after - s.battery;
        s.battery = after;
      }
    }
    trace_.coverage.push_back(tracker_.ratio());
    if (track_cic_) trace_.cic_coverage.push_back(cic_tracker_.ratio());
    if (opts_.record_sensor_series) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = sensors_[i];
        trace_.sink_age.push_back(s.sink_gen >= 0 ? t + 1 - s.sink_gen : -1);
        trace_.sensor_age.push_back(s.sensor_gen >= 0 ? t + 1 - s.sensor_gen : -1);
        trace_.battery.push_back(battery(i));
      }
    }
    ++slot_;
  }
  trace_.ec_replacements = queue_.replacements();

  const auto& scored = trace_.scored_coverage();
  const auto tr = static_cast<std::size_t>(cfg_.timing.round_len);
  const double r = round_reward(std::span<const double>(scored).last(tr), cfg_.eta, cfg_.penalty);
  trace_.rewards.push_back(r);
  ++round_;
  return {r, decision.illegal, done()};
}

EpisodeTrace run_episode(const ScenarioConfig& cfg, const PolicySpec& policy, std::uint64_t seed,
                         const RunOptions& opts) {
  ScenarioConfig c = cfg;
  if (policy.cic) c.coverage_model = CoverageModel::Cic;
  Simulator sim(std::move(c));
  sim.reset(seed, opts);
  auto p = make_policy(policy);
  std::mt19937_64 rng(derive_seed(seed, stream::kPolicy));
  while (!sim.done()) {
    const auto views = sim.observe();
    sim.step_round(p->propose({sim.round(), views}, rng));
  }
  return sim.take_trace();
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t r) noexcept {
  return derive_seed(base_seed, 0x5265706cULL, r);
}

CoverageEstimate estimate_eta_coverage(const ScenarioConfig& cfg, const PolicySpec& policy, double eta,
                                       int replications, std::uint64_t base_seed, const RunOptions& opts,
                                       int threads) {
  ScenarioConfig c = cfg;
  if (policy.cic) c.coverage_model = CoverageModel::Cic;
  c.eta = eta;
  return estimate_eta_coverage(Simulator(std::move(c)), policy, eta, replications, base_seed, opts, threads);
}

CoverageEstimate estimate_eta_coverage(const Simulator& proto, const PolicySpec& policy, double eta,
                                       int replications, std::uint64_t base_seed, const RunOptions& opts,
                                       int threads) {
  if (replications < 1) throw ParameterError("replications must be >= 1");
  if (policy.cic && proto.config().coverage_model != CoverageModel::Cic) {
    throw ContractViolation("fixed-radius policy needs a fixed-radius prototype");
  }
  const auto reps = static_cast<std::size_t>(replications);
  const int workers = std::min(resolve_threads(threads), replications);
  std::vector<Simulator> sims(static_cast<std::size_t>(workers), proto);

  struct Rep {
    double p = 0.0;
    std::size_t slots = 0;
    std::size_t hits = 0;
    double coverage_sum = 0.0;
    std::uint64_t sense = 0;
    std::uint64_t edge = 0;
    std::uint64_t decisions = 0;
  };
  std::vector<Rep> out(reps);
  parallel_for(reps, workers, [&](std::size_t w, std::size_t r) {
    auto& sim = sims[w];
    const auto seed = replication_seed(base_seed, r);
    sim.reset(seed, opts);
    auto pol = make_policy(policy);
    std::mt19937_64 rng(derive_seed(seed, stream::kPolicy));
    while (!sim.done()) {
      const auto views = sim.observe();
      sim.step_round(pol->propose({sim.round(), views}, rng));
    }
    const auto& tr = sim.trace();
    auto& o = out[r];
    const auto& s = tr.scored_coverage();
    o.slots = s.size();
    o.hits = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v >= eta; }));
    o.p = o.slots ? static_cast<double>(o.hits) / static_cast<double>(o.slots) : 0.0;
    for (double v : s) o.coverage_sum += v;
    for (Action a : tr.applied) {
      ++o.decisions;
      if (a != Action::Idle) ++o.sense;
      if (a == Action::Edge) ++o.edge;
    }
  });

  CoverageEstimate est;
  std::size_t hits = 0;
  double cov = 0.0;
  std::uint64_t sense = 0, edge = 0, decisions = 0;
  for (const auto& o : out) {
    est.samples += o.slots;
    hits += o.hits;
    cov += o.coverage_sum;
    sense += o.sense;
    edge += o.edge;
    decisions += o.decisions;
    est.per_replication.push_back(o.p);
  }
  if (est.samples > 0) {
    est.p_c = static_cast<double>(hits) / static_cast<double>(est.samples);
    est.mean_coverage = cov / static_cast<double>(est.samples);
    est.half_width = 1.96 * std::sqrt(est.p_c * (1.0 - est.p_c) / static_cast<double>(est.samples));
  }
  if (reps > 1) {
    double mean = 0.0;
    for (double p : est.per_replication) mean += p;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (double p : est.per_replication) ss += (p - mean) * (p - mean);
    const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
    est.replication_half_width = 1.96 * sd / std::sqrt(static_cast<double>(reps));
  } else {
    est.replication_half_width = est.half_width;
  }
  est.sensing_ratio = decisions ? static_cast<double>(sense) / static_cast<double>(decisions) : 0.0;
  est.ec_ratio = sense ? static_cast<double>(edge) / static_cast<double>(sense) : 0.0;
  return est;
}

}  // namespace freshcov
