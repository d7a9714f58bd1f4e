#pragma once

#include <stdexcept>
#include <string>

namespace chaoslearn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad CLI usage or invalid configuration. CLI maps this to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Missing/malformed input files or schema violations. Exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Numeric failure of an integration. Carries the 1-based step index at
// which the trajectory left the admissible region. Exit code 3.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, long step) : Error(msg), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace chaoslearn
