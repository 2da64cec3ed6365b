#include "freshcov/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "freshcov/channel.hpp"
#include "freshcov/errors.hpp"
#include "freshcov/optimizer.hpp"
#include "freshcov/rng.hpp"

#ifndef FRESHCOV_VERSION
#define FRESHCOV_VERSION "0.0.0"
#endif
#ifndef FRESHCOV_GIT_REV
#define FRESHCOV_GIT_REV "unknown"
#endif

namespace freshcov {

using nlohmann::json;

std::string version_string() { return FRESHCOV_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

RunOptions run_options(const ExperimentConfig& c) {
  RunOptions o;
  o.rounds = c.rounds;
  return o;
}

}  // namespace

PolicySpec resolve_policy(const ExperimentConfig& c) {
  if (c.policy) return *c.policy;
  if (c.kind == ScenarioKind::SinglePrecharged) {
    const auto opt = optimize_single(c.single());
    auto p = PolicySpec::probability(opt.p_s, opt.p_e);
    p.cic = c.cic;
    return p;
  }
  MultiSearchOptions mo;
  mo.step = c.grid_step;
  mo.replications = c.replications;
  mo.seed = c.seed;
  mo.threads = c.threads;
  mo.run = run_options(c);
  mo.cic = c.cic;
  const auto opt = optimize_multi(c.scenario(), mo);
  auto p = PolicySpec::probability(opt.p_s, opt.p_e);
  p.cic = c.cic;
  return p;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  std::vector<double> values = cfg.sweep.values;
  if (cfg.sweep.axis == SweepAxis::None) values = {std::numeric_limits<double>::quiet_NaN()};
  std::vector<SweepRow> rows;
  for (double v : values) {
    const ExperimentConfig c = cfg.sweep.axis == SweepAxis::None ? cfg : cfg.at(cfg.sweep.axis, v);
    c.validate();
    const PolicySpec pol = resolve_policy(c);
    if (pol.kind == PolicyKind::External) throw ParameterError("an external policy cannot be swept offline");

    if (c.kind == ScenarioKind::SinglePrecharged && !pol.cic) {
      const auto r = eta_coverage_closed_form(c.single(), pol.p_s, pol.p_e);
      SweepRow a;
      a.value = v;
      a.method = "analysis";
      a.p_c = r.eta_coverage;
      a.p_s = pol.p_s;
      a.p_e = pol.p_e;
      a.sensing_ratio = pol.p_s;
      a.ec_ratio = pol.p_s > 0.0 ? pol.p_e : 0.0;
      a.mean_coverage = std::numeric_limits<double>::quiet_NaN();
      rows.push_back(a);
    }
    const auto est = estimate_eta_coverage(c.scenario(), pol, c.eta, c.replications, c.seed, run_options(c), c.threads);
    SweepRow s;
    s.value = v;
    s.method = "simulation";
    s.p_c = est.p_c;
    s.half_width = est.replication_half_width;
    s.p_s = pol.p_s;
    s.p_e = pol.p_e;
    s.sensing_ratio = est.sensing_ratio;
    s.ec_ratio = est.ec_ratio;
    s.mean_coverage = est.mean_coverage;
    rows.push_back(s);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "value,method,p_c,half_width,p_s,p_e,sensing_ratio,ec_ratio,mean_coverage\r\n";
  for (const auto& r : rows) {
    out << format_number(r.value) << ',' << csv_field(r.method) << ',' << format_number(r.p_c) << ','
        << format_number(r.half_width) << ',' << format_number(r.p_s) << ',' << format_number(r.p_e) << ','
        << format_number(r.sensing_ratio) << ',' << format_number(r.ec_ratio) << ','
        << format_number(r.mean_coverage) << "\r\n";
  }
}

void write_trace_csv(std::ostream& out, const EpisodeTrace& t) {
  const bool cic = !t.cic_coverage.empty();
  const bool series = !t.sink_age.empty();
  const std::size_t n = t.num_sensors;
  out << "slot,coverage";
  if (cic) out << ",cic_coverage";
  if (series) {
    for (std::size_t i = 0; i < n; ++i) out << ",sink_age_" << i << ",sensor_age_" << i << ",battery_" << i;
  }
  out << "\r\n";
  auto age = [](std::int64_t a) { return a < 0 ? std::string() : std::to_string(a); };
  for (std::size_t s = 0; s < t.coverage.size(); ++s) {
    out << s << ',' << format_number(t.coverage[s]);
    if (cic) out << ',' << format_number(t.cic_coverage[s]);
    if (series) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = s * n + i;
        out << ',' << age(t.sink_age[k]) << ',' << age(t.sensor_age[k]) << ',' << format_number(t.battery[k]);
      }
    }
    out << "\r\n";
  }
}

json trace_summary(const EpisodeTrace& t) {
  json j;
  j["seed"] = t.seed;
  j["slots"] = t.num_slots();
  j["rounds"] = t.num_rounds();
  j["eta"] = t.eta;
  j["eta_coverage"] = t.eta_coverage();
  double cov = 0.0;
  for (double c : t.scored_coverage()) cov += c;
  j["mean_coverage"] = t.coverage.empty() ? 0.0 : cov / static_cast<double>(t.coverage.size());
  double reward = 0.0;
  for (double r : t.rewards) reward += r;
  j["total_reward"] = reward;
  std::uint64_t edge = 0, local = 0, idle = 0;
  for (Action a : t.applied) {
    if (a == Action::Edge) ++edge;
    else if (a == Action::Local) ++local;
    else ++idle;
  }
  const double dec = static_cast<double>(edge + local + idle);
  j["decisions"] = {{"EC", edge}, {"LC", local}, {"IDLE", idle}};
  j["sensing_ratio"] = dec > 0 ? static_cast<double>(edge + local) / dec : 0.0;
  j["ec_ratio"] = edge + local > 0 ? static_cast<double>(edge) / static_cast<double>(edge + local) : 0.0;
  json sensors = json::array();
  double consumed = 0.0, harvested = 0.0;
  for (const auto& s : t.sensors) {
    consumed += s.consumed;
    harvested += s.harvested;
    sensors.push_back({{"sensings", s.sensings},
                       {"local_computes", s.local_computes},
                       {"tx_attempts", s.tx_attempts},
                       {"updates", s.updates},
                       {"drops", s.drops},
                       {"budget_drops", s.budget_drops},
                       {"energy_waits", s.energy_waits},
                       {"illegal_actions", s.illegal_actions},
                       {"consumed_mj", s.consumed},
                       {"harvested_mj", s.harvested}});
  }
  j["energy"] = {{"consumed_mj", consumed}, {"harvested_mj", harvested}};
  j["sensors"] = sensors;
  j["updates"] = t.updates.size();
  j["illegal_actions"] = t.total_illegal();
  j["ec_replacements"] = t.ec_replacements;
  return j;
}

json manifest(const ExperimentConfig& cfg, const std::string& command) {
  json seeds = json::array();
  for (int r = 0; r < cfg.replications; ++r) seeds.push_back(replication_seed(cfg.seed, static_cast<std::size_t>(r)));
  return {{"tool", "freshcov"},
          {"version", version_string()},
          {"git_rev", FRESHCOV_GIT_REV},
          {"command", command},
          {"config", to_json(cfg)},
          {"base_seed", cfg.seed},
          {"replication_seeds", seeds}};
}

ValidationReport validate_analysis(const ExperimentConfig& cfg, double tolerance) {
  if (cfg.kind != ScenarioKind::SinglePrecharged) throw ParameterError("validation needs the single-sensor scenario");
  const PolicySpec pol = resolve_policy(cfg);
  if (pol.kind == PolicyKind::External || pol.cic) throw ParameterError("validation needs a probability policy");
  const auto scn = cfg.single();
  scn.validate();

  ValidationReport rep;
  rep.p_s = pol.p_s;
  rep.p_e = pol.p_e;
  rep.tolerance = tolerance;
  rep.rounds = cfg.rounds.value_or(100000);

  RunOptions opts;
  opts.rounds = rep.rounds;
  opts.record_sensor_series = true;
  auto sc = cfg.scenario();
  sc.budget = BudgetEnforcement::Expected;
  const auto trace = run_episode(sc, pol, cfg.seed, opts);

  // Histogram of sink-side ages; "no data yet" counts as always violating.
  std::int64_t max_age = 0;
  for (auto a : trace.sink_age) max_age = std::max(max_age, a);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(max_age) + 2, 0);
  for (auto a : trace.sink_age) {
    if (a >= 0) ++hist[static_cast<std::size_t>(a)];
  }
  const double total = static_cast<double>(trace.sink_age.size());

  const ModeLink edge{outage_probability(ComputeMode::Edge, scn.distance_m, scn.channel), scn.timing.compute_slots_edge};
  const ModeLink local{outage_probability(ComputeMode::Local, scn.distance_m, scn.channel),
                       scn.timing.compute_slots_local};
  const int d = scn.channel.max_retx;
  const int tr = scn.timing.round_len;

  std::set<int> seen;
  std::uint64_t at_most = 0;  // slots with 0 <= age <= v
  for (std::int64_t v = 0; v <= 100000; ++v) {
    if (v < static_cast<std::int64_t>(hist.size())) at_most += hist[static_cast<std::size_t>(v)];
    const auto cf = violation_analysis(v, pol.p_s, pol.p_e, edge, local, d, tr);
    const double sim = total > 0 ? (total - static_cast<double>(at_most)) / total : 1.0;
    ValidationPoint p;
    p.v_slots = v;
    p.analytic = cf.violation_prob;
    p.simulated = sim;
    p.deviation = std::abs(cf.violation_prob - sim);
    if (cf.p_update > 0.0) {
      const std::array<const ModeLink*, 2> links{&edge, &local};
      const std::array<double, 2> w{cf.weights.edge, cf.weights.local};
      const char* names[2] = {"EC", "LC"};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if (!(w[i] > 0.0 && w[j] > 0.0)) continue;
          const int r = static_cast<int>(classify_violation_range(v, d, tr, links[i]->compute_slots, links[j]->compute_slots).range);
          seen.insert(r);
          if (!p.ranges.empty()) p.ranges += ' ';
          p.ranges += std::string(names[i]) + "->" + names[j] + ":" + std::to_string(r);
        }
      }
    }
    rep.max_deviation = std::max(rep.max_deviation, p.deviation);
    rep.points.push_back(p);
    if (cf.violation_prob < 1e-6 && sim == 0.0 && v > max_age) break;
    if (cf.p_update == 0.0 && v > 4 * tr) break;
  }
  rep.ranges_seen.assign(seen.begin(), seen.end());
  rep.passed = rep.max_deviation <= tolerance;
  return rep;
}

json to_json(const ValidationReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"v_slots", p.v_slots},
                   {"ranges", p.ranges},
                   {"analytic", p.analytic},
                   {"simulated", p.simulated},
                   {"deviation", p.deviation}});
  }
  return {{"p_s", r.p_s},         {"p_e", r.p_e},         {"rounds", r.rounds},
          {"tolerance", r.tolerance}, {"max_deviation", r.max_deviation}, {"passed", r.passed},
          {"ranges_seen", r.ranges_seen}, {"points", pts}};
}

json to_json(const ClosedFormResult& r) {
  auto num = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
  json g = json::object();
  const char* names[2] = {"EC", "LC"};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) g[std::string(names[i]) + "->" + names[j]] = num(r.pair_violation[i][j]);
  }
  return {{"target_aoi_seconds", num(r.target_aoi_seconds)},
          {"target_aoi_slots", r.target_aoi_slots},
          {"p_update", r.p_update},
          {"expected_inter_update", num(r.expected_inter_update)},
          {"expected_violation", num(r.expected_violation)},
          {"violation_prob", r.violation_prob},
          {"eta_coverage", r.eta_coverage},
          {"outage", {{"EC", r.po_edge}, {"LC", r.po_local}}},
          {"mode_weights", {{"EC", r.weights.edge}, {"LC", r.weights.local}}},
          {"pair_violation", g}};
}

}  // namespace freshcov
