#include "freshcov/optimizer.hpp"

#include <cmath>

#include "freshcov/errors.hpp"

namespace freshcov {

std::vector<double> probability_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("grid step must be in (0,1]");
  const auto n = std::llround(1.0 / step);
  if (std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) throw ParameterError("grid step must divide 1");
  std::vector<double> v;
  for (long long i = 0; i <= n; ++i) v.push_back(static_cast<double>(i) / static_cast<double>(n));
  return v;
}

MultiOptimum optimize_multi(const ScenarioConfig& cfg, const MultiSearchOptions& opts) {
  if (opts.replications < 1) throw ParameterError("replications must be >= 1");
  const auto values = probability_grid(opts.step);
  ScenarioConfig c = cfg;
  if (opts.cic) c.coverage_model = CoverageModel::Cic;
  const Simulator proto(std::move(c));
  MultiOptimum best;
  bool have = false;
  for (double ps : values) {
    for (double pe : values) {
      auto spec = PolicySpec::probability(ps, pe);
      spec.cic = opts.cic;
      GridPoint g{ps, pe, {}};
      if (ps == 0.0) {
        // Nothing is ever sensed, so coverage stays at zero.
        g.estimate.samples = static_cast<std::size_t>(opts.replications) *
                             static_cast<std::size_t>(opts.run.rounds.value_or(cfg.timing.rounds_per_episode) *
                                                      cfg.timing.round_len);
        g.estimate.per_replication.assign(static_cast<std::size_t>(opts.replications), 0.0);
      } else {
        g.estimate = estimate_eta_coverage(proto, spec, cfg.eta, opts.replications, opts.seed, opts.run, opts.threads);
      }
      if (!have || g.estimate.p_c > best.p_c) {
        best.p_s = ps;
        best.p_e = pe;
        best.p_c = g.estimate.p_c;
        best.half_width = g.estimate.replication_half_width;
        have = true;
      }
      best.grid.push_back(std::move(g));
    }
  }
  return best;
}

}  // namespace freshcov
