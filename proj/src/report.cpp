#include "qinv/report.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qinv {

namespace {

using nlohmann::json;

std::string sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), v.size());
}

json estimate_json(const Estimate& e) {
  return json{{"mean", e.mean}, {"ci_halfwidth", e.halfwidth}};
}

Estimate estimate_from(const json& j) {
  return Estimate{j.at("mean").get<double>(), j.at("ci_halfwidth").get<double>()};
}

}  // namespace

std::string performance_to_json(const PerformanceReport& report) {
  json doc;
  doc["type"] = "performance";
  doc["p_idle"] = report.p_idle;
  doc["p_busy"] = report.p_busy;
  doc["p_failed"] = report.p_failed;
  doc["L_R"] = report.L_R;
  doc["L"] = report.L;
  doc["W_R"] = report.W_R;
  doc["W"] = report.W;
  doc["B_inv"] = report.B_inv;
  doc["D_S"] = report.D_S;
  doc["lambda_bar"] = report.lambda_bar;
  doc["orbit_marginal"] = to_std(report.orbit_marginal);
  doc["inventory_marginal"] = to_std(report.inventory_marginal);
  doc["env_stationary"] = to_std(report.env_stationary);
  doc["tail_mass_bound"] = report.tail_mass_bound;
  doc["truncation"] = report.truncation_level;
  return doc.dump(2);
}

PerformanceReport performance_from_json(const std::string& text) {
  const json doc = json::parse(text);
  PerformanceReport report;
  report.p_idle = doc.at("p_idle").get<double>();
  report.p_busy = doc.at("p_busy").get<double>();
  report.p_failed = doc.at("p_failed").get<double>();
  report.L_R = doc.at("L_R").get<double>();
  report.L = doc.at("L").get<double>();
  report.W_R = doc.at("W_R").get<double>();
  report.W = doc.at("W").get<double>();
  report.B_inv = doc.at("B_inv").get<double>();
  report.D_S = doc.at("D_S").get<double>();
  report.lambda_bar = doc.at("lambda_bar").get<double>();
  report.orbit_marginal = to_eigen(doc.at("orbit_marginal").get<std::vector<double>>());
  report.inventory_marginal =
      to_eigen(doc.at("inventory_marginal").get<std::vector<double>>());
  report.env_stationary = to_eigen(doc.at("env_stationary").get<std::vector<double>>());
  report.tail_mass_bound = doc.at("tail_mass_bound").get<double>();
  report.truncation_level = doc.at("truncation").get<int>();
  return report;
}

std::string stability_to_json(const StabilityReport& report) {
  json doc;
  doc["type"] = "stability";
  doc["rho"] = report.rho;
  doc["rho_per_state"] = to_std(report.rho_per_state);
  doc["drift_closed_form"] = report.drift_closed;
  if (report.has_numerical_drift) {
    doc["drift_numerical"] = report.drift_numerical;
    doc["pi_star"] = std::vector<double>(report.pi_star.data(),
                                         report.pi_star.data() + report.pi_star.size());
    doc["pi_star_residual"] = report.pi_residual;
  } else {
    doc["drift_numerical"] = nullptr;
  }
  doc["verdict"] = to_string(report.verdict);
  doc["drift_sign_conflict"] = report.drift_sign_conflict;
  return doc.dump(2);
}

StabilityReport stability_from_json(const std::string& text) {
  const json doc = json::parse(text);
  StabilityReport report;
  report.rho = doc.at("rho").get<double>();
  report.rho_per_state = to_eigen(doc.at("rho_per_state").get<std::vector<double>>());
  report.drift_closed = doc.at("drift_closed_form").get<double>();
  if (!doc.at("drift_numerical").is_null()) {
    report.has_numerical_drift = true;
    report.drift_numerical = doc.at("drift_numerical").get<double>();
    const auto pi = doc.at("pi_star").get<std::vector<double>>();
    report.pi_star = Eigen::Map<const RowVector>(pi.data(), pi.size());
    report.pi_residual = doc.at("pi_star_residual").get<double>();
  }
  const std::string verdict = doc.at("verdict").get<std::string>();
  report.verdict = verdict == "stable"     ? Verdict::stable
                   : verdict == "unstable" ? Verdict::unstable
                                           : Verdict::boundary;
  report.drift_sign_conflict = doc.at("drift_sign_conflict").get<bool>();
  return report;
}

std::string sim_to_json(const SimEstimates& estimates, const SimConfig& config) {
  json doc;
  doc["type"] = "simulation";
  doc["config"] = {{"horizon", config.horizon},
                   {"warmup", config.warmup},
                   {"replications", config.replications},
                   {"seed", config.seed},
                   {"orbit_cap", config.orbit_cap}};
  doc["p_idle"] = estimate_json(estimates.p_idle);
  doc["p_busy"] = estimate_json(estimates.p_busy);
  doc["p_failed"] = estimate_json(estimates.p_failed);
  doc["L_R"] = estimate_json(estimates.L_R);
  doc["L"] = estimate_json(estimates.L);
  doc["B_inv"] = estimate_json(estimates.B_inv);
  auto marginal = [](const std::vector<Estimate>& entries) {
    json means = json::array(), halfwidths = json::array();
    for (const auto& e : entries) {
      means.push_back(e.mean);
      halfwidths.push_back(e.halfwidth);
    }
    return json{{"mean", means}, {"ci_halfwidth", halfwidths}};
  };
  doc["orbit_marginal"] = marginal(estimates.orbit_marginal);
  doc["inventory_marginal"] = marginal(estimates.inventory_marginal);
  json reps = json::array();
  for (const auto& rep : estimates.replications)
    reps.push_back(json{{"p_idle", rep.p_idle},
                        {"p_busy", rep.p_busy},
                        {"p_failed", rep.p_failed},
                        {"L_R", rep.L_R},
                        {"L", rep.L},
                        {"B_inv", rep.B_inv},
                        {"orbit_frac", rep.orbit_frac},
                        {"inventory_frac", rep.inventory_frac}});
  doc["replications"] = reps;
  return doc.dump(2);
}

SimEstimates sim_from_json(const std::string& text) {
  const json doc = json::parse(text);
  SimEstimates estimates;
  estimates.p_idle = estimate_from(doc.at("p_idle"));
  estimates.p_busy = estimate_from(doc.at("p_busy"));
  estimates.p_failed = estimate_from(doc.at("p_failed"));
  estimates.L_R = estimate_from(doc.at("L_R"));
  estimates.L = estimate_from(doc.at("L"));
  estimates.B_inv = estimate_from(doc.at("B_inv"));
  auto marginal = [](const json& j) {
    std::vector<Estimate> entries;
    const auto means = j.at("mean").get<std::vector<double>>();
    const auto halfwidths = j.at("ci_halfwidth").get<std::vector<double>>();
    entries.resize(means.size());
    for (std::size_t i = 0; i < means.size(); ++i)
      entries[i] = Estimate{means[i], halfwidths[i]};
    return entries;
  };
  estimates.orbit_marginal = marginal(doc.at("orbit_marginal"));
  estimates.inventory_marginal = marginal(doc.at("inventory_marginal"));
  for (const auto& rep : doc.at("replications")) {
    ReplicationStats stats;
    stats.p_idle = rep.at("p_idle").get<double>();
    stats.p_busy = rep.at("p_busy").get<double>();
    stats.p_failed = rep.at("p_failed").get<double>();
    stats.L_R = rep.at("L_R").get<double>();
    stats.L = rep.at("L").get<double>();
    stats.B_inv = rep.at("B_inv").get<double>();
    stats.orbit_frac = rep.at("orbit_frac").get<std::vector<double>>();
    stats.inventory_frac = rep.at("inventory_frac").get<std::vector<double>>();
    estimates.replications.push_back(std::move(stats));
  }
  return estimates;
}

std::string performance_table(const PerformanceReport& report) {
  std::ostringstream os;
  const char* headers[] = {"Idle", "Busy",  "Failure", "L_R", "L",
                           "W_R",  "W",     "B_inv",   "D_S"};
  const double values[] = {report.p_idle, report.p_busy, report.p_failed,
                           report.L_R,    report.L,      report.W_R,
                           report.W,      report.B_inv,  report.D_S};
  for (const char* h : headers) os << std::setw(12) << h;
  os << "\n";
  for (double v : values) os << std::setw(12) << sig6(v);
  os << "\n";
  os << "lambda_bar = " << sig6(report.lambda_bar)
     << "   truncation = " << report.truncation_level
     << "   tail_mass_bound = " << sig6(report.tail_mass_bound) << "\n";
  return os.str();
}

std::string stability_table(const StabilityReport& report) {
  std::ostringstream os;
  os << "verdict            " << to_string(report.verdict) << "\n";
  os << "rho                " << sig6(report.rho) << "\n";
  os << "drift_closed_form  " << sig6(report.drift_closed) << "\n";
  if (report.has_numerical_drift) {
    os << "drift_numerical    " << sig6(report.drift_numerical)
       << "   (pi* residual " << sig6(report.pi_residual) << ")\n";
  } else {
    os << "drift_numerical    unavailable (some retrial rate is zero)\n";
  }
  if (report.drift_sign_conflict) {
    os << "WARNING: the numerical average drift and the closed-form drift "
          "disagree in sign;\n"
          "         the rho-based verdict above may misclassify this model.\n";
  }
  os << "per-state traffic intensity:\n";
  os << std::setw(5) << "z" << std::setw(12) << "rho_z" << "\n";
  for (int z = 0; z < report.rho_per_state.size(); ++z)
    os << std::setw(5) << z + 1 << std::setw(12) << sig6(report.rho_per_state(z))
       << "\n";
  return os.str();
}

std::string sim_table(const SimEstimates& estimates) {
  std::ostringstream os;
  os << std::setw(10) << "measure" << std::setw(14) << "estimate"
     << std::setw(14) << "ci_halfwidth" << "\n";
  const std::pair<const char*, const Estimate*> rows[] = {
      {"Idle", &estimates.p_idle},   {"Busy", &estimates.p_busy},
      {"Failure", &estimates.p_failed}, {"L_R", &estimates.L_R},
      {"L", &estimates.L},           {"B_inv", &estimates.B_inv}};
  for (const auto& [name, est] : rows)
    os << std::setw(10) << name << std::setw(14) << sig6(est->mean)
       << std::setw(14) << sig6(est->halfwidth) << "\n";
  return os.str();
}

std::string comparison_table(const PerformanceReport& analytic,
                             const SimEstimates& simulated) {
  std::ostringstream os;
  os << std::setw(10) << "measure" << std::setw(14) << "analytic"
     << std::setw(14) << "simulated" << std::setw(14) << "ci_halfwidth"
     << std::setw(12) << "rel_diff" << "\n";
  struct Row {
    const char* name;
    double analytic;
    const Estimate* sim;
  };
  const Row rows[] = {{"Idle", analytic.p_idle, &simulated.p_idle},
                      {"Busy", analytic.p_busy, &simulated.p_busy},
                      {"Failure", analytic.p_failed, &simulated.p_failed},
                      {"L_R", analytic.L_R, &simulated.L_R},
                      {"L", analytic.L, &simulated.L},
                      {"B_inv", analytic.B_inv, &simulated.B_inv}};
  for (const auto& row : rows) {
    const double rel = row.analytic != 0.0
                           ? (row.sim->mean - row.analytic) / row.analytic
                           : 0.0;
    os << std::setw(10) << row.name << std::setw(14) << sig6(row.analytic)
       << std::setw(14) << sig6(row.sim->mean) << std::setw(14)
       << sig6(row.sim->halfwidth) << std::setw(12) << sig6(rel) << "\n";
  }
  return os.str();
}

void write_orbit_marginal_csv(std::ostream& out, const PerformanceReport& report) {
  out << "R,probability\n";
  out.precision(17);
  for (int r = 0; r < report.orbit_marginal.size(); ++r)
    out << r << "," << report.orbit_marginal(r) << "\n";
}

void write_inventory_marginal_csv(std::ostream& out,
                                  const PerformanceReport& report,
                                  const ModelSpec& spec) {
  out << "I,probability\n";
  out.precision(17);
  for (int k = 0; k < report.inventory_marginal.size(); ++k)
    out << spec.policy.s + 1 + k << "," << report.inventory_marginal(k) << "\n";
}

void write_distribution_csv(std::ostream& out, const SteadyState& steady,
                            const ModelSpec& spec) {
  const PhaseIndex index(spec.policy, spec.env.m);
  out << "R,I,status,Z,probability\n";
  out.precision(17);
  for (std::size_t r = 0; r < steady.levels.size(); ++r) {
    const RowVector& level = steady.levels[r];
    for (int k = 0; k < level.size(); ++k) {
      auto [inventory, status, env] = index.unindex(k);
      out << r << "," << inventory << "," << to_string(status) << "," << env
          << "," << level(k) << "\n";
    }
  }
}

void write_replications_csv(std::ostream& out, const SimEstimates& estimates) {
  out << "replication,p_idle,p_busy,p_failed,L_R,L,B_inv\n";
  out.precision(17);
  for (std::size_t r = 0; r < estimates.replications.size(); ++r) {
    const auto& rep = estimates.replications[r];
    out << r << "," << rep.p_idle << "," << rep.p_busy << "," << rep.p_failed
        << "," << rep.L_R << "," << rep.L << "," << rep.B_inv << "\n";
  }
}

}  // namespace qinv
