#include "freshcov/bridge.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>

#include "freshcov/errors.hpp"

namespace freshcov {

using nlohmann::json;

namespace {

json age_json(const SlotAge& a) { return a ? json(*a) : json(nullptr); }

json error_reply(const std::string& code, const std::string& msg) {
  return {{"error", {{"code", code}, {"message", msg}}}};
}

struct ProtocolError {
  std::string code;
  std::string message;
};

}  // namespace

json observations(const Simulator& sim) {
  const auto views = sim.observe();
  const auto& cfg = sim.config();
  json all = json::array();
  for (const auto& self : views) {
    json o = json::array({self.battery, age_json(self.sink_age), age_json(self.sensor_age)});
    for (const auto& m : views) {
      if (m.id == self.id) continue;
      if (distance(m.position, self.position) > cfg.observation_range_m) continue;
      o.push_back(m.battery);
      o.push_back(age_json(m.sink_age));
      o.push_back(age_json(m.sensor_age));
    }
    o.push_back(self.ec_wait);
    all.push_back(std::move(o));
  }
  return all;
}

BridgeSession::BridgeSession(ExperimentConfig base) : base_(std::move(base)) {}

json BridgeSession::reset(const json& req) {
  std::uint64_t seed = 0;
  if (req.contains("seed")) {
    if (!req["seed"].is_number_unsigned()) throw ProtocolError{"bad_request", "'seed' must be an unsigned integer"};
    seed = req["seed"].get<std::uint64_t>();
  }
  ExperimentConfig cfg = base_;
  if (req.contains("config") && !req["config"].is_null()) {
    try {
      cfg = parse_experiment(req["config"]);
    } catch (const Error& e) {
      throw ProtocolError{"bad_config", e.what()};
    }
  }
  const json resolved = to_json(cfg);
  if (!sim_ || resolved != sim_config_) {
    try {
      sim_.emplace(cfg.scenario());
    } catch (const Error& e) {
      sim_.reset();
      throw ProtocolError{"bad_config", e.what()};
    }
    sim_config_ = resolved;
  }
  sim_->reset(seed);
  return {{"obs", observations(*sim_)}};
}

json BridgeSession::step(const json& req) {
  if (!sim_) throw ProtocolError{"no_episode", "send 'reset' before 'step'"};
  if (sim_->done()) throw ProtocolError{"episode_done", "episode is over; send 'reset'"};
  if (!req.contains("actions") || !req["actions"].is_array()) {
    throw ProtocolError{"bad_request", "'actions' must be an array"};
  }
  const auto& arr = req["actions"];
  const std::size_t n = sim_->config().num_sensors();
  if (arr.size() != n) {
    throw ProtocolError{"bad_request", "expected " + std::to_string(n) + " actions, got " + std::to_string(arr.size())};
  }
  std::vector<Action> actions;
  for (const auto& a : arr) {
    std::optional<Action> act;
    if (a.is_number_integer()) act = action_from_int(a.get<std::int64_t>());
    if (!act) throw ProtocolError{"bad_request", "actions must be 0 (EC), 1 (LC) or 2 (IDLE)"};
    actions.push_back(*act);
  }
  const auto out = sim_->step_round(actions);
  const auto& cov = sim_->trace().scored_coverage();
  const auto tr = static_cast<std::ptrdiff_t>(sim_->config().timing.round_len);
  json info = {{"coverage", std::vector<double>(cov.end() - tr, cov.end())},
               {"illegal_actions", out.illegal},
               {"round", sim_->round()},
               {"slot", sim_->slot()}};
  return {{"obs", observations(*sim_)}, {"reward", out.reward}, {"done", out.done}, {"info", info}};
}

std::string BridgeSession::handle(const std::string& line) {
  json reply;
  try {
    json req;
    try {
      req = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ProtocolError{"parse_error", e.what()};
    }
    if (!req.is_object() || !req.contains("cmd") || !req["cmd"].is_string()) {
      throw ProtocolError{"bad_request", "request must be an object with a string 'cmd'"};
    }
    const auto cmd = req["cmd"].get<std::string>();
    if (closed_) throw ProtocolError{"closed", "session is closed"};
    if (cmd == "reset") reply = reset(req);
    else if (cmd == "step") reply = step(req);
    else if (cmd == "close") {
      closed_ = true;
      reply = {{"ok", true}};
    } else {
      throw ProtocolError{"unknown_command", "unknown command '" + cmd + "'"};
    }
  } catch (const ProtocolError& e) {
    reply = error_reply(e.code, e.message);
  } catch (const std::exception& e) {
    reply = error_reply("internal", e.what());
  }
  return reply.dump();
}

void serve_stream(std::istream& in, std::ostream& out, const ExperimentConfig& base) {
  BridgeSession session(base);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

namespace {

bool write_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    const auto n = ::send(fd, s.data() + off, s.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

void serve_connection(int fd, const ExperimentConfig& base) {
  BridgeSession session(base);
  std::string buf;
  char chunk[4096];
  while (!session.closed()) {
    const auto n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buf.append(chunk, static_cast<std::size_t>(n));
    for (std::size_t pos; !session.closed() && (pos = buf.find('\n')) != std::string::npos;) {
      std::string line = buf.substr(0, pos);
      buf.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!write_all(fd, session.handle(line) + "\n")) return;
    }
  }
}

}  // namespace

void serve_tcp(const std::string& host, int port, const ExperimentConfig& base, bool once, std::ostream* announce) {
  const int srv = ::socket(AF_INET, SOCK_STREAM, 0);
  if (srv < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  const int yes = 1;
  ::setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(srv);
    throw Error("invalid IPv4 address '" + host + "'");
  }
  if (::bind(srv, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(srv, 4) < 0) {
    const std::string msg = std::strerror(errno);
    ::close(srv);
    throw Error("cannot listen on " + host + ":" + std::to_string(port) + ": " + msg);
  }
  if (announce) {
    socklen_t len = sizeof addr;
    ::getsockname(srv, reinterpret_cast<sockaddr*>(&addr), &len);
    *announce << "listening on " << host << ':' << ntohs(addr.sin_port) << std::endl;
  }
  while (true) {
    const int fd = ::accept(srv, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      const std::string msg = std::strerror(errno);
      ::close(srv);
      throw Error("accept: " + msg);
    }
    serve_connection(fd, base);
    ::close(fd);
    if (once) break;
  }
  ::close(srv);
}

}  // namespace freshcov
