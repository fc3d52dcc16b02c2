#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qinv/report.hpp"
#include "qinv/scenario.hpp"

namespace fs = std::filesystem;
using namespace qinv;

namespace {

// exit codes: 0 success, 1 usage/parse/validation, 2 unstable, 3 divergence
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnstable = 2;
constexpr int kExitDiverged = 3;

struct CommonOptions {
  std::string scenario_path;
  std::string format = "table";
  std::string out_dir;
};

Scenario load_checked(const std::string& path) {
  Scenario scenario = load_scenario(path);
  const ValidationResult validation = validate_spec(scenario.spec);
  if (!validation.ok()) {
    std::ostringstream os;
    os << "scenario fails validation:";
    for (const auto& violation : validation.violations)
      os << "\n  - " << violation;
    throw ModelError(os.str());
  }
  return scenario;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write " + path.string());
  out << contents;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ModelError(std::string("cannot open ") + what + ": " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_validate(const CommonOptions& opt) {
  Scenario scenario = load_scenario(opt.scenario_path);
  const ValidationResult validation = validate_spec(scenario.spec);
  if (validation.ok()) {
    std::cout << "scenario ok: m=" << scenario.spec.env.m
              << " s=" << scenario.spec.policy.s
              << " S=" << scenario.spec.policy.S
              << " phases=" << scenario.spec.phase_count() << "\n";
    return kExitOk;
  }
  std::cout << "scenario invalid:\n";
  for (const auto& violation : validation.violations)
    std::cout << "  - " << violation << "\n";
  return kExitUsage;
}

int cmd_stability(const CommonOptions& opt) {
  Scenario scenario = load_checked(opt.scenario_path);
  const StabilityReport report = analyze_stability(scenario.spec);
  if (opt.format == "json")
    std::cout << stability_to_json(report) << "\n";
  else
    std::cout << stability_table(report);
  return report.verdict == Verdict::stable ? kExitOk : kExitUnstable;
}

void emit_solution(const CommonOptions& opt, const Scenario& scenario,
                   const SteadyState& steady, const PerformanceReport& report) {
  if (opt.format == "json")
    std::cout << performance_to_json(report) << "\n";
  else
    std::cout << performance_table(report);
  if (opt.out_dir.empty()) return;
  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  write_file(dir / "performance.json", performance_to_json(report));
  write_file(dir / "performance.txt", performance_table(report));
  std::ofstream orbit(dir / "orbit_marginal.csv");
  write_orbit_marginal_csv(orbit, report);
  std::ofstream inventory(dir / "inventory_marginal.csv");
  write_inventory_marginal_csv(inventory, report, scenario.spec);
  std::ofstream distribution(dir / "distribution.csv");
  write_distribution_csv(distribution, steady, scenario.spec);
}

int cmd_solve(const CommonOptions& opt, std::optional<int> truncation) {
  Scenario scenario = load_checked(opt.scenario_path);
  const int levels = truncation.value_or(scenario.truncation);
  SteadyState steady;
  try {
    steady = solve_steady_state(scenario.spec, levels);
  } catch (const UnstableModelError& e) {
    std::cerr << "refusing to solve: " << e.what()
              << "\nrun `qinv stability " << opt.scenario_path
              << "` for the full stability report\n";
    return kExitUnstable;
  }
  emit_solution(opt, scenario, steady, compute_report(steady, scenario.spec));
  return kExitOk;
}

void apply_sim_flags(SimConfig& config, std::optional<std::uint64_t> seed,
                     std::optional<int> replications,
                     std::optional<double> horizon,
                     std::optional<double> warmup) {
  if (seed) config.seed = *seed;
  if (replications) config.replications = *replications;
  if (horizon) config.horizon = *horizon;
  if (warmup) config.warmup = *warmup;
}

int cmd_simulate(const CommonOptions& opt, const SimConfig& config) {
  Scenario scenario = load_checked(opt.scenario_path);
  const SimEstimates estimates = simulate(scenario.spec, config);
  if (opt.format == "json")
    std::cout << sim_to_json(estimates, config) << "\n";
  else
    std::cout << sim_table(estimates);
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    write_file(dir / "estimates.json", sim_to_json(estimates, config));
    write_file(dir / "estimates.txt", sim_table(estimates));
    std::ofstream reps(dir / "replications.csv");
    write_replications_csv(reps, estimates);
  }
  return kExitOk;
}

int cmd_report(const CommonOptions& opt, std::optional<int> truncation,
               const std::string& analytic_path, const std::string& sim_path,
               const SimConfig& config) {
  Scenario scenario = load_checked(opt.scenario_path);
  PerformanceReport analytic;
  if (!analytic_path.empty()) {
    analytic = performance_from_json(
        read_file(analytic_path, "analytic report file"));
  } else {
    const int levels = truncation.value_or(scenario.truncation);
    try {
      const SteadyState steady = solve_steady_state(scenario.spec, levels);
      analytic = compute_report(steady, scenario.spec);
    } catch (const UnstableModelError& e) {
      std::cerr << "refusing to solve: " << e.what() << "\n";
      return kExitUnstable;
    }
  }
  SimEstimates simulated;
  if (!sim_path.empty())
    simulated = sim_from_json(read_file(sim_path, "simulation report file"));
  else
    simulated = simulate(scenario.spec, config);

  std::cout << comparison_table(analytic, simulated);
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    write_file(dir / "comparison.txt", comparison_table(analytic, simulated));
    write_file(dir / "performance.json", performance_to_json(analytic));
    write_file(dir / "estimates.json", sim_to_json(simulated, config));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov-modulated (s,S) retrial inventory engine"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::optional<int> truncation;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<double> horizon, warmup;
  std::string analytic_path, sim_path;

  auto add_common = [&](CLI::App* sub, bool with_format = true) {
    sub->add_option("scenario", opt.scenario_path, "scenario JSON file")
        ->required();
    if (with_format)
      sub->add_option("--format", opt.format, "table or json")
          ->check(CLI::IsMember({"table", "json"}));
  };
  auto add_sim_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master RNG seed");
    sub->add_option("--replications", replications, "number of replications");
    sub->add_option("--horizon", horizon, "simulated time per replication");
    sub->add_option("--warmup", warmup, "initial interval excluded from averages");
  };

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  add_common(validate, false);

  auto* stability = app.add_subcommand("stability", "stability verdict and drift");
  add_common(stability);

  auto* solve = app.add_subcommand("solve", "steady state and performance measures");
  add_common(solve);
  solve->add_option("--truncation", truncation, "orbit truncation level");
  solve->add_option("--out", opt.out_dir, "directory for reports and CSVs");

  auto* simulate_cmd = app.add_subcommand("simulate", "stochastic cross-validation run");
  add_common(simulate_cmd);
  add_sim_flags(simulate_cmd);
  simulate_cmd->add_option("--out", opt.out_dir, "directory for estimate files");

  auto* report = app.add_subcommand("report", "analytic vs simulated comparison");
  add_common(report);
  report->add_option("--truncation", truncation, "orbit truncation level");
  report->add_option("--analytic", analytic_path, "existing performance JSON");
  report->add_option("--sim", sim_path, "existing simulation JSON");
  report->add_option("--out", opt.out_dir, "directory for merged outputs");
  add_sim_flags(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Scenario defaults;  // sim defaults come from the scenario file
    if (simulate_cmd->parsed() || report->parsed()) {
      defaults = load_scenario(opt.scenario_path);
      apply_sim_flags(defaults.sim, seed, replications, horizon, warmup);
    }
    if (validate->parsed()) return cmd_validate(opt);
    if (stability->parsed()) return cmd_stability(opt);
    if (solve->parsed()) return cmd_solve(opt, truncation);
    if (simulate_cmd->parsed()) return cmd_simulate(opt, defaults.sim);
    if (report->parsed())
      return cmd_report(opt, truncation, analytic_path, sim_path, defaults.sim);
  } catch (const SimulationDivergedError& e) {
    std::cerr << "simulation diverged: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const UnstableModelError& e) {
    std::cerr << "unstable model: " << e.what() << "\n";
    return kExitUnstable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
