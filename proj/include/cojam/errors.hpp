#pragma once

#include <stdexcept>

// Error taxonomy for the library.  Everything derives from std::runtime_error
// so callers can catch broadly; the CLI maps each type to a distinct exit code.
namespace cojam {

// A channel vector that must be nonzero (e.g. a relay-to-destination link) is
// numerically zero, so a direction depending on it is undefined.
struct ZeroChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument is outside its mathematical domain (negative power, z outside
// [0, z_max], non-finite input, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A routine only defined for small problem sizes was called with a larger one
// (e.g. the brute-force oracle beyond two relays).
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative solver exhausted its iteration budget without certifying its
// result to tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file was readable but its contents are not a valid instance description.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cojam
