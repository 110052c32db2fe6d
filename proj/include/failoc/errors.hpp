#pragma once

#include <stdexcept>
#include <string>

namespace failoc {

// Invalid parameter combinations, unreadable inputs, unsatisfiable targets.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A retry or expansion budget ran out before the operation finished.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace failoc
