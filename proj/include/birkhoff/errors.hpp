#ifndef BIRKHOFF_ERRORS_HPP
#define BIRKHOFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace birkhoff {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No perfect matching with finite cost exists under the given mask.
struct InfeasibleMatching : Error {
  using Error::Error;
};

struct NonPositiveEntry : Error {
  using Error::Error;
};

struct DimensionTooLarge : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

// Stick-breaking bound gap collapsed (point on a face of the polytope).
struct DegenerateBound : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace birkhoff

#endif  // BIRKHOFF_ERRORS_HPP
