#pragma once

#include <stdexcept>
#include <string>

namespace ccsim {

// Invalid argument to an operation (bad index, length mismatch, out-of-range input).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds a configured implementation bound.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A protocol broke the runtime's rules: wrong phase, acting on a qubit it does
// not hold, producing an output twice.
class ProtocolMisuse : public std::logic_error {
 public:
  ProtocolMisuse(std::size_t step, const std::string& what)
      : std::logic_error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Malformed experiment configuration or task document. `where` names the
// offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace ccsim
