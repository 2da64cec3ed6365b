#include "freshcov/policies.hpp"

#include <sstream>

#include "freshcov/errors.hpp"
#include "freshcov/rng.hpp"

namespace freshcov {

const char* to_string(Action a) noexcept {
  switch (a) {
    case Action::Edge: return "EC";
    case Action::Local: return "LC";
    case Action::Idle: return "IDLE";
  }
  return "?";
}

std::optional<Action> action_from_int(std::int64_t v) noexcept {
  if (v < 0 || v > 2) return std::nullopt;
  return static_cast<Action>(v);
}

void PolicySpec::validate() const {
  if (!(p_s >= 0.0 && p_s <= 1.0)) throw ParameterError("p_s must be in [0,1]");
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw ParameterError("p_e must be in [0,1]");
}

std::string PolicySpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case PolicyKind::ProbabilitySCD: os << "probability(p_s=" << p_s << ",p_e=" << p_e << ")"; break;
    case PolicyKind::AlwaysMode: os << "always-" << to_string(mode) << "(p_s=" << p_s << ")"; break;
    case PolicyKind::External: os << "external"; break;
  }
  if (cic) os << "+cic";
  return os.str();
}

namespace {

class ProbabilityPolicy final : public Policy {
 public:
  ProbabilityPolicy(double ps, double pe) : ps_(ps), pe_(pe) {}
  std::vector<Action> propose(const RoundContext& ctx, std::mt19937_64& rng) override {
    std::vector<Action> out(ctx.sensors.size(), Action::Idle);
    for (auto& a : out) {
      // Both draws always happen so the stream does not depend on legality.
      const double u_sense = uniform01(rng);
      const double u_mode = uniform01(rng);
      if (u_sense < ps_) a = u_mode < pe_ ? Action::Edge : Action::Local;
    }
    return out;
  }

 private:
  double ps_;
  double pe_;
};

class ExternalPolicy final : public Policy {
 public:
  explicit ExternalPolicy(ActionSupplier s) : supplier_(std::move(s)) {}
  std::vector<Action> propose(const RoundContext& ctx, std::mt19937_64&) override {
    auto a = supplier_(ctx);
    if (a.size() != ctx.sensors.size()) throw ContractViolation("external policy returned wrong action count");
    return a;
  }

 private:
  ActionSupplier supplier_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, ActionSupplier supplier) {
  spec.validate();
  switch (spec.kind) {
    case PolicyKind::ProbabilitySCD: return std::make_unique<ProbabilityPolicy>(spec.p_s, spec.p_e);
    case PolicyKind::AlwaysMode:
      return std::make_unique<ProbabilityPolicy>(spec.p_s, spec.mode == ComputeMode::Edge ? 1.0 : 0.0);
    case PolicyKind::External:
      if (!supplier) throw ContractViolation("external policy needs an action supplier");
      return std::make_unique<ExternalPolicy>(std::move(supplier));
  }
  throw ContractViolation("unknown policy kind");
}

Decision coerce(std::vector<Action> requested, std::span<const SensorView> sensors) {
  if (requested.size() != sensors.size()) throw ContractViolation("action count does not match sensors");
  Decision d;
  d.applied = requested;
  for (std::size_t n = 0; n < sensors.size(); ++n) {
    if (d.applied[n] != Action::Idle && !sensors[n].can_act) {
      d.applied[n] = Action::Idle;
      ++d.illegal;
    }
  }
  d.requested = std::move(requested);
  return d;
}

Decision decide(Policy& policy, const RoundContext& ctx, std::mt19937_64& rng) {
  return coerce(policy.propose(ctx, rng), ctx.sensors);
}

double cic_coverage_ratio(const CoverageGrid& grid, std::span<const Point2> sensors,
                          std::span<const bool> updated_this_round, double radius) {
  if (sensors.size() != updated_this_round.size()) throw ContractViolation("cic_coverage_ratio: size mismatch");
  std::vector<Point2> active;
  for (std::size_t n = 0; n < sensors.size(); ++n) {
    if (updated_this_round[n]) active.push_back(sensors[n]);
  }
  return disc_union_ratio(grid, active, radius);
}

double cic_radius(const CorrelationParams& corr, int round_len, double slot_duration_s) {
  return sensing_radius(round_len * slot_duration_s, corr);
}

}  // namespace freshcov
