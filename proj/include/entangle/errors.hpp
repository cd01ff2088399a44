#pragma once

#include <stdexcept>
#include <string>

namespace entangle {

/// Input violates a precondition or a domain invariant (bad dimensions,
/// unnormalized state, malformed document). The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to reach its tolerance (e.g. the eigensolver
/// hit its sweep cap). The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entangle
