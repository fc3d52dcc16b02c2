#ifndef QINV_COMMON_HPP
#define QINV_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace qinv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

// Server status, in the fixed phase-enumeration order.
enum class ServerStatus : int { idle = 0, busy = 1, failed = 2 };

inline const char* to_string(ServerStatus s) {
  switch (s) {
    case ServerStatus::idle: return "idle";
    case ServerStatus::busy: return "busy";
    case ServerStatus::failed: return "failed";
  }
  return "?";
}

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The model fails the rho < 1 test; steady-state solving is refused.
struct UnstableModelError : ModelError {
  using ModelError::ModelError;
};

// A linear system that should be well posed turned out degenerate.
struct DegenerateSolveError : ModelError {
  using ModelError::ModelError;
};

// Closed-form jump-chain limits require every retrial rate positive.
struct LimitStructureError : ModelError {
  using ModelError::ModelError;
};

// A simulation replication exceeded the configured orbit cap.
struct SimulationDivergedError : ModelError {
  using ModelError::ModelError;
};

}  // namespace qinv

#endif
