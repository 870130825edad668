#pragma once

#include <stdexcept>
#include <string>

namespace fg {

/// Malformed or inconsistent input data (bad file, dimension mismatch,
/// violated load-time invariant). CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation requested outside the mathematical domain (zero vector,
/// inadmissible direction, empty Shen interval).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Denominator too close to the admissible-cone boundary.
struct SingularityError : DomainError {
  explicit SingularityError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace fg
