#ifndef QINV_SCENARIO_HPP
#define QINV_SCENARIO_HPP

#include <string>

#include "qinv/model.hpp"
#include "qinv/simulator.hpp"

namespace qinv {

// A scenario file bundles the model parameterization with the default
// truncation level and simulation settings. JSON with // comments allowed.
struct Scenario {
  ModelSpec spec;
  int truncation = 75;
  SimConfig sim;
};

// Throws ModelError with line context on malformed input. Array-length
// mismatches are left for validate_spec to report as violations.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);

}  // namespace qinv

#endif
