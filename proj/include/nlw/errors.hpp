#pragma once

#include <stdexcept>
#include <string>

namespace nlw {

// Invalid parameters or violated preconditions.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Overflow, budget exhaustion or a computation that cannot be trusted.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A profile feature is too small for the requested grid.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nlw
