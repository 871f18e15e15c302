#pragma once

#include <stdexcept>
#include <string>

namespace reldev {

// Argument outside an operation's mathematical domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// An enumeration would exceed the configured work budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tail integral failed to converge (or provably diverges).
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem read/write failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace reldev
