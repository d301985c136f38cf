#pragma once

#include <stdexcept>
#include <string>

namespace crs {

/// Base class for planner-level failures that map to CLI exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input is not a usable configuration (non-rotation matrix, malformed path
/// string, inconsistent costate, ...).
class InvalidConfiguration : public Error {
 public:
  explicit InvalidConfiguration(const std::string& what) : Error(what) {}
};

/// The requested control authority is outside the regime the candidate list
/// covers (u_max < 1).
class UnsupportedRegime : public Error {
 public:
  explicit UnsupportedRegime(const std::string& what) : Error(what) {}
};

/// No candidate produced a feasible solution.  The candidate list is
/// sufficient for u_max >= 1, so this signals a solver defect; the message
/// carries the best near-miss residual as a diagnostic.
class NoSolutionFound : public Error {
 public:
  explicit NoSolutionFound(const std::string& what) : Error(what) {}
};

}  // namespace crs
