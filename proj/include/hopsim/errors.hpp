#pragma once

#include <stdexcept>
#include <string>

namespace hopsim {

// Config file missing, unparsable, or violating a hard invariant.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mass matrix numerically singular (bad parameters).
struct SingularMass : std::runtime_error {
  explicit SingularMass(const std::string& msg) : std::runtime_error(msg) {}
};

// Contact constraint system J M^-1 J^T numerically singular
// (leg at a kinematic singularity while pinned).
struct SingularConstraint : std::runtime_error {
  explicit SingularConstraint(const std::string& msg) : std::runtime_error(msg) {}
};

// State left the configured sanity bounds during integration.
struct NumericalBlowup : std::runtime_error {
  NumericalBlowup(const std::string& msg, double time)
      : std::runtime_error(msg), t(time) {}
  double t;
};

// Not enough hop cycles in a log to form the requested metric.
struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the documented domain (e.g. Bezier phase not in [0,1]).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hopsim
