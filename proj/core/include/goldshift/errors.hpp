#pragma once

#include <stdexcept>
#include <string>

namespace goldshift {

// Bad user input: out-of-range states, malformed specs, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap (enumeration, DP, window) would be exceeded.
class CapExceeded : public InputError {
 public:
  CapExceeded(const std::string& what, std::string estimate)
      : InputError(what), estimate_(std::move(estimate)) {}
  const std::string& estimate() const { return estimate_; }

 private:
  std::string estimate_;
};

// Working precision is too small for the requested tolerance.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The level induction cannot continue (e.g. a boundary is no longer representable).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace goldshift
