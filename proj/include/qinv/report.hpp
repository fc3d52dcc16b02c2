#ifndef QINV_REPORT_HPP
#define QINV_REPORT_HPP

#include <iosfwd>
#include <string>

#include "qinv/measures.hpp"
#include "qinv/simulator.hpp"
#include "qinv/stability.hpp"

namespace qinv {

// Machine-readable emission at full precision; parse(emit(x)) == x.
std::string performance_to_json(const PerformanceReport& report);
PerformanceReport performance_from_json(const std::string& text);

std::string stability_to_json(const StabilityReport& report);
StabilityReport stability_from_json(const std::string& text);

std::string sim_to_json(const SimEstimates& estimates, const SimConfig& config);
SimEstimates sim_from_json(const std::string& text);

// Human tables, 6 significant digits.
std::string performance_table(const PerformanceReport& report);
std::string stability_table(const StabilityReport& report);
std::string sim_table(const SimEstimates& estimates);
std::string comparison_table(const PerformanceReport& analytic,
                             const SimEstimates& simulated);

// CSV emission.
void write_orbit_marginal_csv(std::ostream& out, const PerformanceReport& report);
void write_inventory_marginal_csv(std::ostream& out,
                                  const PerformanceReport& report,
                                  const ModelSpec& spec);
void write_distribution_csv(std::ostream& out, const SteadyState& steady,
                            const ModelSpec& spec);
void write_replications_csv(std::ostream& out, const SimEstimates& estimates);

}  // namespace qinv

#endif
