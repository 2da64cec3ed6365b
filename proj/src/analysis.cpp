#include "freshcov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "freshcov/channel.hpp"
#include "freshcov/coverage.hpp"
#include "freshcov/errors.hpp"

namespace freshcov {

namespace {

void require_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation(std::string(what) + " must be a probability");
}

// Success probability of a data item within max_retx attempts.
double delivery_prob(double po, int max_retx) { return 1.0 - std::pow(po, max_retx); }

std::vector<double> attempt_pmf(double po, int max_retx) {
  std::vector<double> pmf(static_cast<std::size_t>(max_retx) + 1, 0.0);
  for (int c = 1; c <= max_retx; ++c) pmf[static_cast<std::size_t>(c)] = truncated_attempt_prob(po, max_retx, c);
  return pmf;
}

}  // namespace

TargetAoi target_aoi(double eta, double area_m2, const CorrelationParams& corr, double slot_duration_s) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must be in (0,1]");
  if (!(area_m2 > 0.0)) throw ParameterError("area must be positive");
  const double needed_radius = std::sqrt(eta * area_m2 / std::numbers::pi);
  if (needed_radius >= sensing_radius(0.0, corr)) {
    throw UnreachableTarget("coverage ratio " + std::to_string(eta) + " is out of reach even with fresh data");
  }
  const double v = -(corr.beta1 / corr.beta2) * needed_radius - std::log1p(-corr.err_threshold) / (2.0 * corr.beta2);
  if (v <= slot_duration_s) {
    throw UnreachableTarget("target age " + std::to_string(v) + " s is not longer than one slot");
  }
  return {v, static_cast<std::int64_t>(std::floor(v / slot_duration_s + 1e-9))};
}

double p_update(double p_s, double p_e, double po_edge, double po_local, int max_retx) {
  require_prob(p_s, "p_s");
  require_prob(p_e, "p_e");
  require_prob(po_edge, "edge outage");
  require_prob(po_local, "local outage");
  if (max_retx < 1) throw ContractViolation("max_retx must be >= 1");
  return p_s * (p_e * delivery_prob(po_edge, max_retx) + (1.0 - p_e) * delivery_prob(po_local, max_retx));
}

double expected_inter_update(double p_x, int round_len) {
  if (!(p_x > 0.0)) throw NeverUpdates("update probability is zero");
  return static_cast<double>(round_len) / p_x;
}

ModeWeights conditional_mode_prob(double p_e, double po_edge, double po_local, int max_retx) {
  const double we = p_e * delivery_prob(po_edge, max_retx);
  const double wl = (1.0 - p_e) * delivery_prob(po_local, max_retx);
  const double den = we + wl;
  if (!(den > 0.0)) throw NeverUpdates("neither compute mode can deliver an update");
  return {we / den, wl / den};
}

RangeInfo classify_violation_range(std::int64_t v, int max_retx, int round_len, int tau_prev, int tau_cur) {
  if (v < 2 + tau_prev) return {ViolationRange::Always, 0};
  if (v < 1 + max_retx + tau_prev) return {ViolationRange::RetxLimited, 0};
  if (v < round_len + 2 + tau_cur) return {ViolationRange::FirstRound, 0};
  const std::int64_t y = (v - 2 - tau_cur) / round_len;
  if (v < y * round_len + 1 + max_retx + tau_cur) return {ViolationRange::TailPartial, y};
  return {ViolationRange::TailFull, y};
}

double truncated_attempt_prob(double po, int max_retx, int c) {
  if (c < 1 || c > max_retx) return 0.0;
  const double pf = delivery_prob(po, max_retx);
  if (!(pf > 0.0)) throw NeverUpdates("mode never delivers");
  return std::pow(po, c - 1) * (1.0 - po) / pf;
}

double mean_delivery_delay(const ModeLink& m, int max_retx) {
  double ez = 0.0;
  for (int c = 1; c <= max_retx; ++c) ez += (1.0 + c + m.compute_slots) * truncated_attempt_prob(m.outage, max_retx, c);
  return ez;
}

double violation_time_conditional(const ViolationInputs& in) {
  if (in.v_slots < 0) throw ContractViolation("target age must be >= 0");
  if (!(in.p_x > 0.0 && in.p_x <= 1.0)) throw NeverUpdates("update probability is zero");
  const double tr = in.round_len;
  const double q = 1.0 - in.p_x;
  const double v = static_cast<double>(in.v_slots);
  const double ez_prev = mean_delivery_delay(in.prev, in.max_retx);
  const double ez_cur = mean_delivery_delay(in.cur, in.max_retx);
  // X = (Y - 1) tau_r + Z with Y ~ Geometric(p_x)
  const double ex_cur = tr / in.p_x - tr + ez_cur;
  const auto info = classify_violation_range(in.v_slots, in.max_retx, in.round_len, in.prev.compute_slots,
                                             in.cur.compute_slots);
  const int tp = in.prev.compute_slots;
  const int tc = in.cur.compute_slots;

  switch (info.range) {
    case ViolationRange::Always:
      // Every slot of U = tau_r - Z_prev + X_cur is in violation.
      return tr - ez_prev + ex_cur;
    case ViolationRange::RetxLimited: {
      const auto pmf = attempt_pmf(in.prev.outage, in.max_retx);
      const std::int64_t n = in.v_slots - 1 - tp;  // largest attempt count with Z_prev <= v
      double within = 0.0;
      double tail = 0.0;
      for (int c = 1; c <= in.max_retx; ++c) {
        if (c <= n) within += pmf[c];
        else tail += (1.0 + c + tp) * pmf[c];
      }
      return tr + ex_cur - within * (v + 1.0) - tail;
    }
    case ViolationRange::FirstRound:
      return tr + ex_cur - v - 1.0;
    case ViolationRange::TailPartial: {
      const auto pmf = attempt_pmf(in.cur.outage, in.max_retx);
      const auto y = static_cast<double>(info.y);
      const std::int64_t lam3 = in.v_slots - tc - info.y * in.round_len - 1;
      double partial = 0.0;
      for (std::int64_t c = lam3 + 1; c <= in.max_retx; ++c) {
        partial += pmf[static_cast<std::size_t>(c)] * (y * tr + static_cast<double>(c) + tc - v);
      }
      partial *= in.p_x * std::pow(q, y - 1.0);
      const double later = std::pow(q, y) * (tr * (y + 1.0 / in.p_x) + ez_cur - v - 1.0);
      return partial + later;
    }
    case ViolationRange::TailFull: {
      const auto y = static_cast<double>(info.y);
      return std::pow(q, y) * (tr * (y + 1.0 / in.p_x) + ez_cur - v - 1.0);
    }
  }
  return 0.0;
}

std::optional<double> violation_time_compact(const ViolationInputs& in) {
  if (!(in.p_x > 0.0)) throw NeverUpdates("update probability is zero");
  const int d = in.max_retx;
  const double tr = in.round_len;
  const double v = static_cast<double>(in.v_slots);
  const int tp = in.prev.compute_slots;
  const int tc = in.cur.compute_slots;
  auto f1 = [d](double p) {
    const double pf = 1.0 - std::pow(p, d);
    return 1.0 / (1.0 - p) - d * std::pow(p, d) / pf;
  };
  const auto info = classify_violation_range(in.v_slots, d, in.round_len, tp, tc);
  switch (info.range) {
    case ViolationRange::Always:
      return tr / in.p_x + tc - tp + f1(in.cur.outage) - f1(in.prev.outage);
    case ViolationRange::RetxLimited: {
      const double p = in.prev.outage;
      const double pf = 1.0 - std::pow(p, d);
      const double pn = std::pow(p, static_cast<double>(in.v_slots - 1 - tp));
      const double pd = std::pow(p, d);
      return tr / in.p_x + tc - tp + f1(in.cur.outage) - (v - tp - pn - d * pd) / pf -
             (pn - pd) / (pf * (1.0 - p));
    }
    case ViolationRange::FirstRound:
      return tr / in.p_x + tc + f1(in.cur.outage) - v;
    case ViolationRange::TailPartial:
      return std::nullopt;
    case ViolationRange::TailFull: {
      const double lam3 = v - tc - tr * static_cast<double>(info.y) - 1.0;
      const double p = in.cur.outage;
      const double pf = 1.0 - std::pow(p, d);
      return std::pow(1.0 - in.p_x, static_cast<double>(info.y)) *
             (-lam3 - 1.0 + tr / in.p_x + 1.0 / (1.0 - p) + d * (1.0 - 1.0 / pf));
    }
  }
  return std::nullopt;
}

ClosedFormResult violation_analysis(std::int64_t v_slots, double p_s, double p_e, const ModeLink& edge,
                                    const ModeLink& local, int max_retx, int round_len) {
  ClosedFormResult r;
  r.target_aoi_slots = v_slots;
  r.target_aoi_seconds = std::numeric_limits<double>::quiet_NaN();
  r.po_edge = edge.outage;
  r.po_local = local.outage;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.pair_violation = {{{nan, nan}, {nan, nan}}};
  r.p_update = p_update(p_s, p_e, edge.outage, local.outage, max_retx);
  if (!(r.p_update > 0.0)) {
    r.expected_inter_update = std::numeric_limits<double>::infinity();
    r.expected_violation = std::numeric_limits<double>::infinity();
    r.violation_prob = 1.0;
    r.eta_coverage = 0.0;
    return r;
  }
  r.expected_inter_update = expected_inter_update(r.p_update, round_len);
  r.weights = conditional_mode_prob(p_e, edge.outage, local.outage, max_retx);

  const std::array<const ModeLink*, 2> links{&edge, &local};
  const std::array<double, 2> w{r.weights.edge, r.weights.local};
  int min_tau = std::numeric_limits<int>::max();
  for (int i = 0; i < 2; ++i) {
    if (w[i] > 0.0) min_tau = std::min(min_tau, links[i]->compute_slots);
  }
  double eg = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!(w[i] > 0.0 && w[j] > 0.0)) continue;
      const double g = violation_time_conditional({v_slots, r.p_update, *links[i], *links[j], max_retx, round_len});
      r.pair_violation[i][j] = g;
      eg += w[i] * w[j] * g;
    }
  }
  r.expected_violation = eg;
  if (v_slots < 2 + min_tau) {
    r.violation_prob = 1.0;
  } else {
    r.violation_prob = std::clamp(eg / r.expected_inter_update, 0.0, 1.0);
  }
  r.eta_coverage = 1.0 - r.violation_prob;
  return r;
}

ClosedFormResult eta_coverage_closed_form(const SingleSensorScenario& scn, double p_s, double p_e) {
  scn.validate();
  const auto target = target_aoi(scn.eta, scn.area(), scn.correlation, scn.channel.slot_duration_s);
  const ModeLink edge{outage_probability(ComputeMode::Edge, scn.distance_m, scn.channel), scn.timing.compute_slots_edge};
  const ModeLink local{outage_probability(ComputeMode::Local, scn.distance_m, scn.channel),
                       scn.timing.compute_slots_local};
  auto r = violation_analysis(target.slots, p_s, p_e, edge, local, scn.channel.max_retx, scn.timing.round_len);
  r.target_aoi_seconds = target.seconds;
  return r;
}

double mean_transmissions(double po, int max_retx) {
  require_prob(po, "outage");
  double n = 0.0;
  for (int c = 1; c <= max_retx; ++c) n += c * std::pow(po, c - 1) * (1.0 - po);
  return n + max_retx * std::pow(po, max_retx);
}

RoundEnergy avg_energy_per_round(double p_s, double p_e, double po_edge, double po_local, int max_retx,
                                 const EnergyParams& energy) {
  require_prob(p_s, "p_s");
  require_prob(p_e, "p_e");
  RoundEnergy e;
  e.edge = energy.sense + energy.tx * mean_transmissions(po_edge, max_retx);
  e.local = energy.sense + energy.compute + energy.tx * mean_transmissions(po_local, max_retx);
  e.total = p_s * p_e * e.edge + p_s * (1.0 - p_e) * e.local;
  return e;
}

double optimal_ps_given_pe(double p_e, double budget, int rounds, double energy_edge, double energy_local) {
  require_prob(p_e, "p_e");
  if (!(energy_edge > 0.0 && energy_local > 0.0)) throw ContractViolation("round energies must be positive");
  if (rounds < 1) throw ContractViolation("rounds must be >= 1");
  if (!(budget > 0.0)) return 0.0;
  const double den = rounds * (energy_edge * p_e + energy_local * (1.0 - p_e));
  return std::min(budget / den, 1.0);
}

SingleOptimum optimize_single(const SingleSensorScenario& scn, double pe_step) {
  scn.validate();
  if (!(pe_step > 0.0 && pe_step <= 1.0)) throw ParameterError("p_e step must be in (0,1]");
  const auto target = target_aoi(scn.eta, scn.area(), scn.correlation, scn.channel.slot_duration_s);
  const ModeLink edge{outage_probability(ComputeMode::Edge, scn.distance_m, scn.channel), scn.timing.compute_slots_edge};
  const ModeLink local{outage_probability(ComputeMode::Local, scn.distance_m, scn.channel),
                       scn.timing.compute_slots_local};
  const int d = scn.channel.max_retx;
  const auto en = avg_energy_per_round(1.0, 1.0, edge.outage, local.outage, d, scn.energy);
  const auto steps = std::max<long long>(1, std::llround(1.0 / pe_step));

  SingleOptimum best;
  bool have = false;
  for (long long i = 0; i <= steps; ++i) {
    const double pe = static_cast<double>(i) / static_cast<double>(steps);
    const double ps = optimal_ps_given_pe(pe, scn.energy.battery_budget, scn.timing.rounds_per_episode, en.edge, en.local);
    auto r = violation_analysis(target.slots, ps, pe, edge, local, d, scn.timing.round_len);
    r.target_aoi_seconds = target.seconds;
    if (!have || r.eta_coverage > best.result.eta_coverage + 1e-12) {
      best = {ps, pe, r};
      have = true;
    }
  }
  return best;
}

}  // namespace freshcov
