#pragma once

#include <stdexcept>
#include <string>

namespace aokr {

// Thrown when a constructor or operation precondition on user-supplied
// values is violated (non-positive kbar, negative spreads, bad grids, ...).
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when the momentum ladder cannot be grown enough to keep the
// truncated tail amplitude below tolerance.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative numerical procedure fails to converge or an
// internal cross-check (e.g. dual-route consistency) is violated.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a CSV file does not match the energy-record schema.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a calibration has no usable records or a non-physical
// (negative) radicand.
class calibration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aokr
