#include "freshcov/config_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "freshcov/errors.hpp"

namespace freshcov {

using nlohmann::json;

const char* to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::None: return "none";
    case SweepAxis::Eta: return "eta";
    case SweepAxis::Distance: return "distance";
    case SweepAxis::NumSensors: return "num_sensors";
    case SweepAxis::ComputeEnergy: return "compute_energy";
    case SweepAxis::ReuseProb: return "reuse_prob";
    case SweepAxis::MaxRetx: return "max_retx";
    case SweepAxis::Budget: return "budget";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Line lookup. A minimal scanner that follows the document structure and
// stops at the value whose path matches the pointer.

namespace {

class LineLocator {
 public:
  LineLocator(const std::string& text, const std::string& target) : s_(text), target_(target) {}

  int run() {
    try {
      skip_ws();
      value("");
    } catch (const Found& f) {
      return f.line;
    } catch (const Abort&) {
    }
    return 0;
  }

 private:
  struct Found {
    int line;
  };
  struct Abort {};

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  char peek() {
    if (i_ >= s_.size()) throw Abort{};
    return s_[i_];
  }
  std::string string_token() {
    if (peek() != '"') throw Abort{};
    ++i_;
    std::string out;
    while (true) {
      const char c = peek();
      ++i_;
      if (c == '"') return out;
      if (c == '\\') {
        out.push_back(peek());
        ++i_;
      } else {
        if (c == '\n') ++line_;
        out.push_back(c);
      }
    }
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out.push_back(c);
    }
    return out;
  }
  void value(const std::string& path) {
    skip_ws();
    if (path == target_) throw Found{line_};
    const char c = peek();
    if (c == '{') {
      ++i_;
      skip_ws();
      if (peek() == '}') {
        ++i_;
        return;
      }
      while (true) {
        skip_ws();
        const std::string key = string_token();
        skip_ws();
        if (peek() != ':') throw Abort{};
        ++i_;
        value(path + "/" + escape(key));
        skip_ws();
        if (peek() == ',') {
          ++i_;
          continue;
        }
        if (peek() == '}') {
          ++i_;
          return;
        }
        throw Abort{};
      }
    }
    if (c == '[') {
      ++i_;
      skip_ws();
      if (peek() == ']') {
        ++i_;
        return;
      }
      for (std::size_t k = 0;; ++k) {
        value(path + "/" + std::to_string(k));
        skip_ws();
        if (peek() == ',') {
          ++i_;
          continue;
        }
        if (peek() == ']') {
          ++i_;
          return;
        }
        throw Abort{};
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != ',' && s_[i_] != '}' &&
           s_[i_] != ']') {
      ++i_;
    }
  }

  const std::string& s_;
  const std::string& target_;
  std::size_t i_ = 0;
  int line_ = 1;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    throw ConfigError(msg + " (at " + (ptr.empty() ? "/" : ptr) + ")", text_.empty() ? 0 : locate_line(text_, ptr));
  }

  void require_object(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
  }

  void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) const {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) fail(ptr + "/" + it.key(), "unknown key '" + it.key() + "'");
    }
  }

  void number(const json& obj, const std::string& ptr, const char* key, double& out) const {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(ptr + "/" + key, std::string("'") + key + "' must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(ptr + "/" + key, std::string("'") + key + "' must be finite");
  }

  template <class Int>
  void integer(const json& obj, const std::string& ptr, const char* key, Int& out) const {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(ptr + "/" + key, std::string("'") + key + "' must be an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned()) {
        out = v.get<Int>();
      } else {
        fail(ptr + "/" + key, std::string("'") + key + "' must be non-negative");
      }
    } else {
      out = v.get<Int>();
    }
  }

  void boolean(const json& obj, const std::string& ptr, const char* key, bool& out) const {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(ptr + "/" + key, std::string("'") + key + "' must be true or false");
    out = v.get<bool>();
  }

  std::string string(const json& obj, const std::string& ptr, const char* key, const std::string& dflt) const {
    if (!obj.contains(key)) return dflt;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(ptr + "/" + key, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  Point2 point(const json& v, const std::string& ptr) const {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(ptr, "expected a point [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

 private:
  const std::string& text_;
};

SweepAxis parse_axis(const std::string& s, bool& ok) {
  ok = true;
  for (auto a : {SweepAxis::None, SweepAxis::Eta, SweepAxis::Distance, SweepAxis::NumSensors,
                 SweepAxis::ComputeEnergy, SweepAxis::ReuseProb, SweepAxis::MaxRetx, SweepAxis::Budget}) {
    if (s == to_string(a)) return a;
  }
  ok = false;
  return SweepAxis::None;
}

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

int locate_line(const std::string& text, const std::string& pointer) { return LineLocator(text, pointer).run(); }

// ---------------------------------------------------------------------------

ExperimentConfig default_experiment(ScenarioKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == ScenarioKind::SinglePrecharged) {
    // One sensor gives little data per episode; run long episodes instead.
    c.rounds = 10000;
  } else {
    c.energy = default_multi_energy();
    c.budget = BudgetEnforcement::Hard;
  }
  return c;
}

ScenarioConfig ExperimentConfig::scenario() const {
  ScenarioConfig s;
  if (kind == ScenarioKind::SinglePrecharged) {
    s = make_single_scenario(single());
    s.budget = budget;
  } else {
    s.kind = ScenarioKind::MultiEh;
    s.channel = channel;
    s.correlation = correlation;
    s.energy = energy;
    s.timing = timing;
    s.battery = BatteryModel::EnergyHarvesting;
    s.budget = budget;
    s.eta = eta;
    s.area.shape = AreaSpec::Shape::Rectangle;
    s.area.width = width_m;
    s.area.height = height_m;
    s.sink = sink.value_or(Point2{width_m / 2.0, height_m / 2.0});
    s.sensors = sensors.empty() ? place_sensors_uniform(num_sensors, width_m, height_m, s.sink, placement_seed)
                                : sensors;
  }
  s.fidelity = fidelity;
  s.penalty = penalty;
  s.observation_range_m = observation_range_m;
  s.area.resolution = grid_resolution_m;
  if (cic) s.coverage_model = CoverageModel::Cic;
  return s;
}

SingleSensorScenario ExperimentConfig::single() const {
  SingleSensorScenario s;
  s.channel = channel;
  s.correlation = correlation;
  s.energy = energy;
  s.timing = timing;
  s.distance_m = distance_m;
  s.area_radius_m = area_radius_m;
  s.eta = eta;
  return s;
}

ExperimentConfig ExperimentConfig::at(SweepAxis axis, double v) const {
  ExperimentConfig c = *this;
  switch (axis) {
    case SweepAxis::None: break;
    case SweepAxis::Eta: c.eta = v; break;
    case SweepAxis::Distance:
      if (kind != ScenarioKind::SinglePrecharged) throw ParameterError("distance sweep needs the single-sensor scenario");
      c.distance_m = v;
      break;
    case SweepAxis::NumSensors:
      if (!is_integral(v) || v < 1) throw ParameterError("sensor count must be a positive integer");
      if (kind != ScenarioKind::MultiEh) throw ParameterError("sensor-count sweep needs the multi-sensor scenario");
      c.num_sensors = static_cast<std::size_t>(v);
      c.sensors.clear();
      break;
    case SweepAxis::ComputeEnergy: c.energy.compute = v; break;
    case SweepAxis::ReuseProb: c.channel.reuse_prob = v; break;
    case SweepAxis::MaxRetx:
      if (!is_integral(v) || v < 1) throw ParameterError("max_retx must be a positive integer");
      c.channel.max_retx = static_cast<int>(v);
      break;
    case SweepAxis::Budget: c.energy.battery_budget = v; break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw ParameterError("replications must be >= 1");
  if (rounds && *rounds < 1) throw ParameterError("rounds must be >= 1");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw ParameterError("grid_step must be in (0,1]");
  if (policy) policy->validate();
  if (kind == ScenarioKind::SinglePrecharged) single().validate();
  scenario().validate();
}

ExperimentConfig parse_experiment(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line.
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line);
  }
  return parse_experiment(doc, text);
}

ExperimentConfig parse_experiment(const json& doc, const std::string& text) {
  const Reader rd(text);
  rd.require_object(doc, "");
  rd.only_keys(doc, "", {"scenario", "channel", "correlation", "energy", "timing", "network", "eta", "penalty",
                         "channel_fidelity", "budget_enforcement", "policy", "sweep", "replications", "rounds", "seed",
                         "threads", "grid_step", "output"});

  const std::string kind_s = rd.string(doc, "", "scenario", "single-precharged");
  ScenarioKind kind;
  if (kind_s == "single-precharged") kind = ScenarioKind::SinglePrecharged;
  else if (kind_s == "multi-eh") kind = ScenarioKind::MultiEh;
  else rd.fail("/scenario", "scenario must be 'single-precharged' or 'multi-eh'");
  ExperimentConfig c = default_experiment(kind);

  if (doc.contains("channel")) {
    const auto& j = doc["channel"];
    const std::string p = "/channel";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"tx_power_dbm", "path_loss_exp", "noise_power_dbm", "sink_intensity", "reuse_prob",
                        "bandwidth_hz", "data_size_edge_bits", "data_size_local_bits", "slot_duration_s", "max_retx"});
    if (j.contains("tx_power_dbm")) {
      double dbm = 0.0;
      rd.number(j, p, "tx_power_dbm", dbm);
      c.channel.tx_power_mw = dbm_to_mw(dbm);
    }
    if (j.contains("noise_power_dbm") && j["noise_power_dbm"].is_null()) {
      c.channel.noise_power_mw = 0.0;  // null: noiseless
    } else if (j.contains("noise_power_dbm")) {
      double dbm = 0.0;
      rd.number(j, p, "noise_power_dbm", dbm);
      c.channel.noise_power_mw = dbm_to_mw(dbm);
    }
    rd.number(j, p, "path_loss_exp", c.channel.path_loss_exp);
    rd.number(j, p, "sink_intensity", c.channel.sink_intensity);
    rd.number(j, p, "reuse_prob", c.channel.reuse_prob);
    rd.number(j, p, "bandwidth_hz", c.channel.bandwidth_hz);
    rd.number(j, p, "data_size_edge_bits", c.channel.data_size_edge_bits);
    rd.number(j, p, "data_size_local_bits", c.channel.data_size_local_bits);
    rd.number(j, p, "slot_duration_s", c.channel.slot_duration_s);
    rd.integer(j, p, "max_retx", c.channel.max_retx);
  }
  if (doc.contains("correlation")) {
    const auto& j = doc["correlation"];
    const std::string p = "/correlation";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"beta1", "beta2", "err_threshold"});
    rd.number(j, p, "beta1", c.correlation.beta1);
    rd.number(j, p, "beta2", c.correlation.beta2);
    rd.number(j, p, "err_threshold", c.correlation.err_threshold);
  }
  if (doc.contains("energy")) {
    const auto& j = doc["energy"];
    const std::string p = "/energy";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"sense", "tx", "compute", "battery_budget", "battery_cap", "harvest_min", "harvest_max"});
    rd.number(j, p, "sense", c.energy.sense);
    rd.number(j, p, "tx", c.energy.tx);
    rd.number(j, p, "compute", c.energy.compute);
    rd.number(j, p, "battery_budget", c.energy.battery_budget);
    rd.number(j, p, "battery_cap", c.energy.battery_cap);
    rd.number(j, p, "harvest_min", c.energy.harvest_min);
    rd.number(j, p, "harvest_max", c.energy.harvest_max);
  }
  if (doc.contains("timing")) {
    const auto& j = doc["timing"];
    const std::string p = "/timing";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"round_len", "compute_slots_edge", "compute_slots_local", "rounds_per_episode"});
    rd.integer(j, p, "round_len", c.timing.round_len);
    rd.integer(j, p, "compute_slots_edge", c.timing.compute_slots_edge);
    rd.integer(j, p, "compute_slots_local", c.timing.compute_slots_local);
    rd.integer(j, p, "rounds_per_episode", c.timing.rounds_per_episode);
  }
  if (doc.contains("network")) {
    const auto& j = doc["network"];
    const std::string p = "/network";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"distance_m", "area_radius_m", "width_m", "height_m", "grid_resolution_m", "num_sensors",
                        "placement_seed", "sensors", "sink", "observation_range_m"});
    rd.number(j, p, "distance_m", c.distance_m);
    rd.number(j, p, "area_radius_m", c.area_radius_m);
    rd.number(j, p, "width_m", c.width_m);
    rd.number(j, p, "height_m", c.height_m);
    rd.number(j, p, "grid_resolution_m", c.grid_resolution_m);
    rd.number(j, p, "observation_range_m", c.observation_range_m);
    rd.integer(j, p, "num_sensors", c.num_sensors);
    rd.integer(j, p, "placement_seed", c.placement_seed);
    if (j.contains("sensors")) {
      const auto& arr = j["sensors"];
      if (!arr.is_array()) rd.fail(p + "/sensors", "'sensors' must be an array of [x, y] points");
      c.sensors.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) c.sensors.push_back(rd.point(arr[i], p + "/sensors/" + std::to_string(i)));
      if (!c.sensors.empty()) c.num_sensors = c.sensors.size();
    }
    if (j.contains("sink")) c.sink = rd.point(j["sink"], p + "/sink");
  }
  rd.number(doc, "", "eta", c.eta);
  rd.number(doc, "", "penalty", c.penalty);

  const std::string fid = rd.string(doc, "", "channel_fidelity", "analytic");
  if (fid == "analytic") c.fidelity = ChannelFidelity::Analytic;
  else if (fid == "geometric") c.fidelity = ChannelFidelity::Geometric;
  else rd.fail("/channel_fidelity", "channel_fidelity must be 'analytic' or 'geometric'");

  if (doc.contains("budget_enforcement")) {
    const std::string b = rd.string(doc, "", "budget_enforcement", "");
    if (b == "expected") c.budget = BudgetEnforcement::Expected;
    else if (b == "hard") c.budget = BudgetEnforcement::Hard;
    else rd.fail("/budget_enforcement", "budget_enforcement must be 'expected' or 'hard'");
  }

  if (doc.contains("policy")) {
    const auto& j = doc["policy"];
    const std::string p = "/policy";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"kind", "p_s", "p_e", "cic"});
    const std::string k = rd.string(j, p, "kind", "optimized");
    rd.boolean(j, p, "cic", c.cic);
    PolicySpec spec;
    if (k == "optimized") {
      c.policy.reset();
    } else {
      if (k == "probability") spec = PolicySpec::probability(1.0, 1.0);
      else if (k == "always-ec") spec = PolicySpec::always(ComputeMode::Edge);
      else if (k == "always-lc") spec = PolicySpec::always(ComputeMode::Local);
      else if (k == "idle") spec = PolicySpec::idle();
      else if (k == "external") spec = PolicySpec::external();
      else rd.fail(p + "/kind", "unknown policy kind '" + k + "'");
      rd.number(j, p, "p_s", spec.p_s);
      if (k == "probability") rd.number(j, p, "p_e", spec.p_e);
      else if (j.contains("p_e")) rd.fail(p + "/p_e", "'p_e' only applies to the probability policy");
      if (!(spec.p_s >= 0.0 && spec.p_s <= 1.0)) rd.fail(p + "/p_s", "p_s must be in [0,1]");
      if (!(spec.p_e >= 0.0 && spec.p_e <= 1.0)) rd.fail(p + "/p_e", "p_e must be in [0,1]");
      spec.cic = c.cic;
      c.policy = spec;
    }
  }

  if (doc.contains("sweep")) {
    const auto& j = doc["sweep"];
    const std::string p = "/sweep";
    rd.require_object(j, p);
    rd.only_keys(j, p, {"axis", "values"});
    bool ok = false;
    c.sweep.axis = parse_axis(rd.string(j, p, "axis", "none"), ok);
    if (!ok) rd.fail(p + "/axis", "unknown sweep axis");
    if (j.contains("values")) {
      const auto& vals = j["values"];
      if (!vals.is_array()) rd.fail(p + "/values", "'values' must be an array of numbers");
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!vals[i].is_number()) rd.fail(p + "/values/" + std::to_string(i), "sweep value must be a number");
        c.sweep.values.push_back(vals[i].get<double>());
      }
    }
  }
  rd.integer(doc, "", "replications", c.replications);
  if (doc.contains("rounds")) {
    std::int64_t r = 0;
    rd.integer(doc, "", "rounds", r);
    c.rounds = r;
  }
  rd.integer(doc, "", "seed", c.seed);
  rd.integer(doc, "", "threads", c.threads);
  rd.number(doc, "", "grid_step", c.grid_step);
  c.output = rd.string(doc, "", "output", "");

  // Domain checks, reported against the most specific location we know.
  auto check = [&](const std::string& ptr, auto&& fn) {
    try {
      fn();
    } catch (const ParameterError& e) {
      rd.fail(ptr, e.what());
    } catch (const UnreachableTarget& e) {
      rd.fail(ptr, e.what());
    }
  };
  check("/channel", [&] { c.channel.validate(); });
  check("/correlation", [&] { c.correlation.validate(); });
  check("/energy", [&] { c.energy.validate(); });
  check("/timing", [&] { c.timing.validate(c.channel.max_retx); });
  check("", [&] { c.validate(); });
  for (std::size_t i = 0; i < c.sweep.values.size(); ++i) {
    check("/sweep/values/" + std::to_string(i), [&] { c.at(c.sweep.axis, c.sweep.values[i]).validate(); });
  }
  return c;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* out = std::getenv("FRESHCOV_OUTPUT"); out && *out) cfg.output = out;
  if (const char* th = std::getenv("FRESHCOV_THREADS"); th && *th) {
    char* end = nullptr;
    const long v = std::strtol(th, &end, 10);
    if (*end != '\0' || v < 0) throw ConfigError("FRESHCOV_THREADS must be a non-negative integer");
    cfg.threads = static_cast<int>(v);
  }
}

json to_json(const PolicySpec& p) {
  json j;
  switch (p.kind) {
    case PolicyKind::ProbabilitySCD:
      j = {{"kind", "probability"}, {"p_s", p.p_s}, {"p_e", p.p_e}};
      break;
    case PolicyKind::AlwaysMode:
      j = {{"kind", p.mode == ComputeMode::Edge ? "always-ec" : "always-lc"}, {"p_s", p.p_s}};
      break;
    case PolicyKind::External:
      j = {{"kind", "external"}};
      break;
  }
  j["cic"] = p.cic;
  return j;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["scenario"] = c.kind == ScenarioKind::SinglePrecharged ? "single-precharged" : "multi-eh";
  j["channel"] = {{"tx_power_dbm", 10.0 * std::log10(c.channel.tx_power_mw)},
                  {"path_loss_exp", c.channel.path_loss_exp},
                  {"noise_power_dbm", c.channel.noise_power_mw > 0.0 ? json(10.0 * std::log10(c.channel.noise_power_mw))
                                                                     : json(nullptr)},
                  {"sink_intensity", c.channel.sink_intensity},
                  {"reuse_prob", c.channel.reuse_prob},
                  {"bandwidth_hz", c.channel.bandwidth_hz},
                  {"data_size_edge_bits", c.channel.data_size_edge_bits},
                  {"data_size_local_bits", c.channel.data_size_local_bits},
                  {"slot_duration_s", c.channel.slot_duration_s},
                  {"max_retx", c.channel.max_retx}};
  j["correlation"] = {{"beta1", c.correlation.beta1}, {"beta2", c.correlation.beta2},
                      {"err_threshold", c.correlation.err_threshold}};
  j["energy"] = {{"sense", c.energy.sense},
                 {"tx", c.energy.tx},
                 {"compute", c.energy.compute},
                 {"battery_budget", c.energy.battery_budget},
                 {"battery_cap", c.energy.battery_cap},
                 {"harvest_min", c.energy.harvest_min},
                 {"harvest_max", c.energy.harvest_max}};
  j["timing"] = {{"round_len", c.timing.round_len},
                 {"compute_slots_edge", c.timing.compute_slots_edge},
                 {"compute_slots_local", c.timing.compute_slots_local},
                 {"rounds_per_episode", c.timing.rounds_per_episode}};
  json net = {{"grid_resolution_m", c.grid_resolution_m}, {"observation_range_m", c.observation_range_m}};
  if (c.kind == ScenarioKind::SinglePrecharged) {
    net["distance_m"] = c.distance_m;
    net["area_radius_m"] = c.area_radius_m;
  } else {
    net["width_m"] = c.width_m;
    net["height_m"] = c.height_m;
    net["num_sensors"] = c.num_sensors;
    net["placement_seed"] = c.placement_seed;
    if (!c.sensors.empty()) {
      json arr = json::array();
      for (const auto& p : c.sensors) arr.push_back({p.x, p.y});
      net["sensors"] = arr;
    }
    if (c.sink) net["sink"] = {c.sink->x, c.sink->y};
  }
  j["network"] = net;
  j["eta"] = c.eta;
  j["penalty"] = c.penalty;
  j["channel_fidelity"] = c.fidelity == ChannelFidelity::Analytic ? "analytic" : "geometric";
  j["budget_enforcement"] = c.budget == BudgetEnforcement::Expected ? "expected" : "hard";
  if (c.policy) {
    j["policy"] = to_json(*c.policy);
  } else {
    j["policy"] = {{"kind", "optimized"}, {"cic", c.cic}};
  }
  j["sweep"] = {{"axis", to_string(c.sweep.axis)}, {"values", c.sweep.values}};
  j["replications"] = c.replications;
  if (c.rounds) j["rounds"] = *c.rounds;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["grid_step"] = c.grid_step;
  j["output"] = c.output;
  return j;
}

}  // namespace freshcov
