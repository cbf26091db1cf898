#pragma once

#include <stdexcept>
#include <string>

namespace qbattery {

/// Raised when an argument violates a documented precondition
/// (non-Hermitian matrix, parameter outside its domain, size mismatch).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is requested whose value is not known in closed
/// form (e.g. the unrestricted work/energy ratio of a thermal channel).
class NotEstablishedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace qbattery
