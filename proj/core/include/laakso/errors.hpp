#pragma once

#include <stdexcept>
#include <string>

namespace laakso {

// Numeric failures (solver non-convergence, residual blow-up).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid incompatibilities (step not commensurate with edge lengths).
struct grid_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sample grids too coarse to represent the requested quantity.
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal construction failures that valid inputs should never trigger.
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace laakso
