// freshcov command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "freshcov/analysis.hpp"
#include "freshcov/bridge.hpp"
#include "freshcov/config_io.hpp"
#include "freshcov/errors.hpp"
#include "freshcov/experiment.hpp"
#include "freshcov/optimizer.hpp"

namespace fc = freshcov;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kRuntime = 1, kConfig = 2, kValidation = 3, kIo = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fc::ExperimentConfig load(const std::string& path, const std::string& scenario) {
  fc::ExperimentConfig cfg;
  if (!path.empty()) {
    cfg = fc::load_experiment(path);
  } else {
    cfg = fc::default_experiment(scenario == "multi-eh" ? fc::ScenarioKind::MultiEh : fc::ScenarioKind::SinglePrecharged);
  }
  fc::apply_env_overrides(cfg);
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

// Manifest goes next to the primary output: out.csv -> out.manifest.json.
void write_manifest(const fc::ExperimentConfig& cfg, const std::string& output, const std::string& command) {
  if (output.empty()) return;
  auto p = std::filesystem::path(output);
  p.replace_extension(".manifest.json");
  auto f = open_out(p.string());
  f << fc::manifest(cfg, command).dump(2) << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"freshcov: eta-coverage analysis, simulation and RL environment for sensor networks"};
  app.set_version_flag("--version", fc::version_string());
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario = "single-precharged";
  std::string output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--scenario", scenario, "Built-in defaults when no config is given")
        ->check(CLI::IsMember({"single-precharged", "multi-eh"}));
    sub->add_option("-o,--output", output, "Output file (default: config 'output', else stdout)");
  };

  double p_s = NAN, p_e = NAN;
  auto* analyze = app.add_subcommand("analyze", "Closed-form eta-coverage of the single pre-charged sensor");
  add_common(analyze);
  analyze->add_option("--p-s", p_s, "Sensing probability (default: optimized)")->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--p-e", p_e, "EC probability (default: optimized)")->check(CLI::Range(0.0, 1.0));

  std::string trace_path;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo eta-coverage with the configured policy");
  add_common(simulate);
  simulate->add_option("--trace", trace_path, "Write the per-slot trace of the first replication as CSV");

  auto* optimize = app.add_subcommand("optimize", "Search the probability policy");
  add_common(optimize);

  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep and write CSV");
  add_common(sweep);

  int port = -1;
  std::string host = "127.0.0.1";
  bool once = false;
  auto* serve = app.add_subcommand("serve-env", "Serve the environment over newline-delimited JSON");
  serve->add_option("-c,--config", config_path, "Default episode config (JSON)")->check(CLI::ExistingFile);
  serve->add_option("--scenario", scenario, "Built-in defaults when no config is given")
      ->check(CLI::IsMember({"single-precharged", "multi-eh"}));
  serve->add_option("--port", port, "Listen on TCP instead of stdin/stdout (0 = any free port)");
  serve->add_option("--host", host, "TCP address to bind");
  serve->add_flag("--once", once, "Exit after the first TCP connection closes");

  double tolerance = 0.02;
  auto* validate = app.add_subcommand("validate", "Compare closed form with simulation over all target ages");
  add_common(validate);
  validate->add_option("--tolerance", tolerance, "Allowed absolute deviation")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  if (serve->parsed()) {
    if (config_path.empty() && scenario == "single-precharged" && !serve->count("--scenario")) scenario = "multi-eh";
    const auto cfg = load(config_path, scenario);
    if (port >= 0) fc::serve_tcp(host, port, cfg, once, &std::cerr);
    else fc::serve_stream(std::cin, std::cout, cfg);
    return kOk;
  }

  auto cfg = load(config_path, scenario);
  if (!output.empty()) cfg.output = output;

  if (analyze->parsed()) {
    if (cfg.kind != fc::ScenarioKind::SinglePrecharged) throw fc::ParameterError("analyze needs the single-sensor scenario");
    json j;
    if (std::isnan(p_s) != std::isnan(p_e)) throw fc::ParameterError("give both --p-s and --p-e, or neither");
    if (std::isnan(p_s)) {
      const auto opt = fc::optimize_single(cfg.single());
      j = fc::to_json(opt.result);
      j["p_s"] = opt.p_s;
      j["p_e"] = opt.p_e;
      j["optimized"] = true;
    } else {
      j = fc::to_json(fc::eta_coverage_closed_form(cfg.single(), p_s, p_e));
      j["p_s"] = p_s;
      j["p_e"] = p_e;
      j["optimized"] = false;
    }
    emit_json(j, cfg.output);
    write_manifest(cfg, cfg.output, "analyze");
    return kOk;
  }

  if (simulate->parsed()) {
    const auto pol = fc::resolve_policy(cfg);
    if (pol.kind == fc::PolicyKind::External) throw fc::ParameterError("simulate cannot drive an external policy");
    fc::RunOptions opts;
    opts.rounds = cfg.rounds;
    const auto est = fc::estimate_eta_coverage(cfg.scenario(), pol, cfg.eta, cfg.replications, cfg.seed, opts, cfg.threads);
    json j = {{"policy", fc::to_json(pol)},
              {"eta", cfg.eta},
              {"eta_coverage", est.p_c},
              {"half_width", est.replication_half_width},
              {"binomial_half_width", est.half_width},
              {"samples", est.samples},
              {"per_replication", est.per_replication},
              {"mean_coverage", est.mean_coverage},
              {"sensing_ratio", est.sensing_ratio},
              {"ec_ratio", est.ec_ratio}};
    if (!trace_path.empty()) {
      auto sc = cfg.scenario();
      if (pol.cic) sc.coverage_model = fc::CoverageModel::Cic;
      opts.record_sensor_series = true;
      const auto tr = fc::run_episode(sc, pol, fc::replication_seed(cfg.seed, 0), opts);
      auto f = open_out(trace_path);
      fc::write_trace_csv(f, tr);
      j["trace_summary"] = fc::trace_summary(tr);
    }
    emit_json(j, cfg.output);
    write_manifest(cfg, cfg.output, "simulate");
    return kOk;
  }

  if (optimize->parsed()) {
    json j;
    if (cfg.kind == fc::ScenarioKind::SinglePrecharged) {
      const auto opt = fc::optimize_single(cfg.single());
      j = {{"method", "analysis"}, {"p_s", opt.p_s}, {"p_e", opt.p_e}, {"eta_coverage", opt.result.eta_coverage},
           {"result", fc::to_json(opt.result)}};
    } else {
      fc::MultiSearchOptions mo;
      mo.step = cfg.grid_step;
      mo.replications = cfg.replications;
      mo.seed = cfg.seed;
      mo.threads = cfg.threads;
      mo.run.rounds = cfg.rounds;
      mo.cic = cfg.cic;
      const auto opt = fc::optimize_multi(cfg.scenario(), mo);
      json grid = json::array();
      for (const auto& g : opt.grid) {
        grid.push_back({{"p_s", g.p_s}, {"p_e", g.p_e}, {"p_c", g.estimate.p_c},
                        {"half_width", g.estimate.replication_half_width}});
      }
      j = {{"method", "simulation"}, {"p_s", opt.p_s}, {"p_e", opt.p_e}, {"eta_coverage", opt.p_c},
           {"half_width", opt.half_width}, {"grid", grid}};
    }
    emit_json(j, cfg.output);
    write_manifest(cfg, cfg.output, "optimize");
    return kOk;
  }

  if (sweep->parsed()) {
    const auto rows = fc::run_sweep(cfg);
    if (cfg.output.empty()) {
      fc::write_sweep_csv(std::cout, rows);
    } else {
      auto f = open_out(cfg.output);
      fc::write_sweep_csv(f, rows);
      write_manifest(cfg, cfg.output, "sweep");
    }
    return kOk;
  }

  if (validate->parsed()) {
    const auto rep = fc::validate_analysis(cfg, tolerance);
    emit_json(fc::to_json(rep), cfg.output);
    std::cerr << (rep.passed ? "PASS" : "FAIL") << " max deviation " << rep.max_deviation << " (tolerance "
              << rep.tolerance << ")\n";
    return rep.passed ? kOk : kValidation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const fc::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
