#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "freshcov/params.hpp"
#include "freshcov/scenario.hpp"

namespace freshcov {

/// Per-mode link statistics used by the closed form.
struct ModeLink {
  double outage = 0.0;    ///< per-attempt outage probability
  int compute_slots = 1;  ///< tau_e or tau_l
};

struct TargetAoi {
  double seconds = 0.0;
  std::int64_t slots = 0;  ///< floor(seconds / slot)
};

/// Largest sink-side age (seconds) for which one sensor at the centre of an
/// area of `area_m2` still covers a fraction `eta` of it. Throws
/// UnreachableTarget if fresh data cannot reach `eta` or the target is not
/// longer than one slot.
TargetAoi target_aoi(double eta, double area_m2, const CorrelationParams& corr, double slot_duration_s);

/// Probability that a round ends with a successful update.
double p_update(double p_s, double p_e, double po_edge, double po_local, int max_retx);

/// Mean slots between successive updates. Throws NeverUpdates if p_x == 0.
double expected_inter_update(double p_x, int round_len);

struct ModeWeights {
  double edge = 0.0;
  double local = 0.0;
};

/// Mode probabilities conditioned on a round producing an update.
ModeWeights conditional_mode_prob(double p_e, double po_edge, double po_local, int max_retx);

enum class ViolationRange {
  Always = 1,       ///< target below the smallest possible age after an update
  RetxLimited = 2,  ///< only some retransmission counts keep the age under target
  FirstRound = 3,   ///< every update from the previous cycle fits; the next one may not
  TailPartial = 4,  ///< the current cycle's y-th round is partly within target
  TailFull = 5,     ///< the current cycle's y-th round is fully within target
};

struct RangeInfo {
  ViolationRange range = ViolationRange::Always;
  std::int64_t y = 0;  ///< round index for the tail ranges, 0 otherwise
};

RangeInfo classify_violation_range(std::int64_t v_slots, int max_retx, int round_len, int tau_prev,
                                   int tau_cur);

struct ViolationInputs {
  std::int64_t v_slots = 0;
  double p_x = 0.0;
  ModeLink prev;
  ModeLink cur;
  int max_retx = 1;
  int round_len = 8;
};

/// Expected number of slots in one inter-update interval where the sink-side
/// age exceeds `v_slots`, given the modes of the update that opened the
/// interval (`prev`) and the one that closes it (`cur`). Evaluated with
/// explicit sums over attempt counts and rounds.
double violation_time_conditional(const ViolationInputs& in);

/// Same quantity through the compact algebraic expressions. Available for
/// ranges 1, 2, 3 and 5; nullopt for range 4.
std::optional<double> violation_time_compact(const ViolationInputs& in);

/// Mean attempt count, mean delay and distribution of a mode's attempts
/// conditioned on the data item getting through.
double truncated_attempt_prob(double po, int max_retx, int c);
double mean_delivery_delay(const ModeLink& m, int max_retx);  ///< E[Z] = E[1 + c + tau]

struct ClosedFormResult {
  double target_aoi_seconds = 0.0;
  std::int64_t target_aoi_slots = 0;
  double p_update = 0.0;
  double expected_inter_update = 0.0;  ///< slots; +inf when p_update == 0
  double expected_violation = 0.0;     ///< slots
  double violation_prob = 1.0;
  double eta_coverage = 0.0;
  double po_edge = 0.0;
  double po_local = 0.0;
  ModeWeights weights;
  /// G[prev][cur], index 0 = edge, 1 = local; NaN for pairs with zero weight.
  std::array<std::array<double, 2>, 2> pair_violation{};
};

/// Core of the closed form once the target is expressed in slots.
ClosedFormResult violation_analysis(std::int64_t v_slots, double p_s, double p_e, const ModeLink& edge,
                                    const ModeLink& local, int max_retx, int round_len);

ClosedFormResult eta_coverage_closed_form(const SingleSensorScenario& scn, double p_s, double p_e);

/// Mean attempts spent on one data item: sum_c c p^{c-1}(1-p) + delta p^delta.
double mean_transmissions(double po, int max_retx);

struct RoundEnergy {
  double edge = 0.0;   ///< energy of a round that senses and offloads
  double local = 0.0;  ///< energy of a round that senses and computes locally
  double total = 0.0;  ///< expectation over the policy
};

RoundEnergy avg_energy_per_round(double p_s, double p_e, double po_edge, double po_local, int max_retx,
                                 const EnergyParams& energy);

/// Largest sensing probability whose expected episode energy fits the budget.
double optimal_ps_given_pe(double p_e, double budget, int rounds, double energy_edge, double energy_local);

struct SingleOptimum {
  double p_s = 0.0;
  double p_e = 0.0;
  ClosedFormResult result;
};

/// Exhaustive search over p_e in {0, step, ..., 1} with p_s at its budget
/// limit. Ties go to the smaller p_e.
SingleOptimum optimize_single(const SingleSensorScenario& scn, double pe_step = 0.01);

}  // namespace freshcov
