#ifndef QINV_STABILITY_HPP
#define QINV_STABILITY_HPP

#include <utility>

#include "qinv/jump_chain.hpp"

namespace qinv {

enum class Verdict { stable, unstable, boundary };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::boundary: return "boundary";
  }
  return "?";
}

// Positive-recurrence report. The verdict comes from the closed-form traffic
// intensity rho; the numerical average drift of the limiting jump chain is
// reported alongside and a sign conflict between the two is flagged rather
// than silently resolved. The drift quantities need theta_z > 0 everywhere;
// specs with a zero retrial rate get only the rho verdict.
struct StabilityReport {
  double rho = 0.0;
  Vector rho_per_state;       // (lambda_z/mu_z) (1 + xi_z/alpha_z)
  double drift_closed = 0.0;  // sum_z alpha_z (lambda_z - mu_z) + lambda_z xi_z
  bool has_numerical_drift = false;
  double drift_numerical = 0.0;
  RowVector pi_star;  // stationary vector of the limiting jump chain
  double pi_residual = 0.0;
  Verdict verdict = Verdict::unstable;
  bool drift_sign_conflict = false;
};

// Stationary vector of the limiting jump chain: pi A = pi, pi 1 = 1,
// solved densely with one balance equation replaced by the normalization.
RowVector solve_pi_star(const JumpChainLimits& limits);

// Average one-step level drift of the limiting jump chain.
double numerical_drift(const JumpChainLimits& limits, const RowVector& pi_star);

double closed_form_drift(const ModelSpec& spec);

// rho and the per-environment-state intensities.
std::pair<double, Vector> traffic_intensity(const ModelSpec& spec);

StabilityReport analyze_stability(const ModelSpec& spec);

}  // namespace qinv

#endif
