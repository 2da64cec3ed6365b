#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "freshcov/config_io.hpp"
#include "freshcov/simulator.hpp"

namespace freshcov {

/// Flattened observation of every sensor: own [battery, sink age, sensor
/// age], then the same triple for each other sensor within the observation
/// range in id order, then the own EC waiting time. Unknown ages are null.
nlohmann::json observations(const Simulator& sim);

/// One environment behind the line protocol. Each call to handle() takes one
/// request line and returns exactly one reply line (without the newline).
class BridgeSession {
 public:
  explicit BridgeSession(ExperimentConfig base = default_experiment(ScenarioKind::MultiEh));

  std::string handle(const std::string& line);
  bool closed() const noexcept { return closed_; }

 private:
  nlohmann::json reset(const nlohmann::json& req);
  nlohmann::json step(const nlohmann::json& req);

  ExperimentConfig base_;
  std::optional<Simulator> sim_;
  nlohmann::json sim_config_;  // resolved config the simulator was built from
  bool closed_ = false;
};

/// Serves one session over the streams until "close" or end of input.
void serve_stream(std::istream& in, std::ostream& out, const ExperimentConfig& base);

/// Listens on host:port and serves each connection with a fresh session.
/// Returns after the first connection ends when `once` is set. Prints the
/// bound port to `announce` (useful with port 0).
void serve_tcp(const std::string& host, int port, const ExperimentConfig& base, bool once, std::ostream* announce);

}  // namespace freshcov
