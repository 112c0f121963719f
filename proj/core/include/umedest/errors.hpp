#pragma once

#include <stdexcept>
#include <string>

namespace umedest {

// Root finding / estimating-equation failures (target outside range, no sign
// change, too many failed replications). Maps to CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant (valid inputs can never trigger these).
// Maps to CLI exit code 4.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace umedest
