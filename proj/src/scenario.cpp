#include "qinv/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qinv {

namespace {

using nlohmann::json;

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Vector vector_field(const json& doc, const char* name) {
  if (!doc.contains(name))
    throw ModelError(std::string("scenario: missing field '") + name + "'");
  const auto& arr = doc.at(name);
  if (!arr.is_array())
    throw ModelError(std::string("scenario: field '") + name +
                     "' must be an array of numbers");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ModelError("scenario parse error at line " +
                     std::to_string(line_of_byte(text, e.byte)) + ": " +
                     e.what());
  }

  Scenario scenario;
  try {
    auto& env = scenario.spec.env;
    env.m = doc.at("m").get<int>();
    scenario.spec.policy.s = doc.at("s").get<int>();
    scenario.spec.policy.S = doc.at("S").get<int>();
    env.lambda = vector_field(doc, "lambda");
    env.mu = vector_field(doc, "mu");
    env.xi = vector_field(doc, "xi");
    env.alpha = vector_field(doc, "alpha");
    env.theta = vector_field(doc, "theta");

    const auto& q_rows = doc.at("Q");
    if (!q_rows.is_array())
      throw ModelError("scenario: field 'Q' must be an array of rows");
    const std::size_t rows = q_rows.size();
    std::size_t cols = 0;
    for (const auto& row : q_rows) cols = std::max(cols, row.size());
    env.Q = Matrix::Zero(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (q_rows[i].size() != cols)
        throw ModelError("scenario: Q row " + std::to_string(i + 1) +
                         " has ragged length");
      for (std::size_t j = 0; j < cols; ++j)
        env.Q(i, j) = q_rows[i][j].get<double>();
    }
    env.q = rows == cols && rows > 0 ? Vector(-env.Q.diagonal())
                                     : Vector::Zero(env.m);

    scenario.truncation = doc.value("truncation", 75);
    if (doc.contains("sim")) {
      const auto& sim = doc.at("sim");
      scenario.sim.horizon = sim.value("horizon", scenario.sim.horizon);
      scenario.sim.warmup = sim.value("warmup", scenario.sim.warmup);
      scenario.sim.replications =
          sim.value("replications", scenario.sim.replications);
      scenario.sim.seed = sim.value("seed", scenario.sim.seed);
      scenario.sim.orbit_cap = sim.value("orbit_cap", scenario.sim.orbit_cap);
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("scenario: ") + e.what());
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& scenario) {
  const auto& env = scenario.spec.env;
  auto vec = [](const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  json doc;
  doc["m"] = env.m;
  doc["s"] = scenario.spec.policy.s;
  doc["S"] = scenario.spec.policy.S;
  doc["lambda"] = vec(env.lambda);
  doc["mu"] = vec(env.mu);
  doc["xi"] = vec(env.xi);
  doc["alpha"] = vec(env.alpha);
  doc["theta"] = vec(env.theta);
  json q_rows = json::array();
  for (int i = 0; i < env.Q.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < env.Q.cols(); ++j) row.push_back(env.Q(i, j));
    q_rows.push_back(row);
  }
  doc["Q"] = q_rows;
  doc["truncation"] = scenario.truncation;
  doc["sim"] = {{"horizon", scenario.sim.horizon},
                {"warmup", scenario.sim.warmup},
                {"replications", scenario.sim.replications},
                {"seed", scenario.sim.seed},
                {"orbit_cap", scenario.sim.orbit_cap}};
  return doc.dump(2);
}

}  // namespace qinv
