#pragma once

#include <stdexcept>
#include <string>

namespace dilutea {

// Evaluation landed on (or numerically indistinguishable from) a zero of a
// denominator factor. The message names the offending factor.
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A result violated a structural expectation, e.g. a quantity that must be
// real positive came out with a large imaginary part.
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A string ansatz failed one of its defining constraints.
struct ansatz_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two roots (or a root pair inside a string) produced an exactly vanishing
// factor in the Bethe equations.
struct singularity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton/continuation failure; carries the last nome value that converged.
struct solver_error : std::runtime_error {
  double last_good_x;
  solver_error(const std::string& msg, double x)
      : std::runtime_error(msg), last_good_x(x) {}
};

}  // namespace dilutea
