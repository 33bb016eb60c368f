#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctail {

// A tuning or configuration inequality does not hold. what() names the
// violated inequality, e.g. "beta ≥ gamma0/2".
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a distribution function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature or series evaluation failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ctail
