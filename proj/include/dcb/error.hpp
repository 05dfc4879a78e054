#pragma once

#include <stdexcept>
#include <string>

namespace dcb {

// Invalid user input: malformed scenario files, bad allocations, parameters
// outside their documented range. The CLI maps this to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Failure while building or solving a model (state cap exceeded, reducible
// chain, residual check failed). The CLI maps this to exit code 2.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcb
