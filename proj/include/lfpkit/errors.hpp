#ifndef LFPKIT_ERRORS_HPP
#define LFPKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfpkit {

/// Base class for all lfpkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input file could not be parsed; carries the 1-based line number.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line(line) {}
  std::size_t line;
};

/// Structural validation failed (order laws, monotonicity, name lookups...).
struct ValidationError : Error {
  using Error::Error;
};

struct CycleDetected : ValidationError {
  CycleDetected() : ValidationError("cover relation contains a cycle") {}
};

/// A pair of elements with no unique least upper bound.
struct NotALattice : ValidationError {
  NotALattice(const std::string& x, const std::string& y)
      : ValidationError("no unique join for elements '" + x + "' and '" + y + "'"),
        x(x), y(y) {}
  std::string x, y;
};

struct NoBottom : ValidationError {
  NoBottom() : ValidationError("poset has no least element") {}
};

/// Some element is not the join of the generators below it.
struct BadGenerators : ValidationError {
  explicit BadGenerators(const std::string& witness)
      : ValidationError("generating set fails at element '" + witness + "'") {}
};

struct NotCertified : ValidationError {
  NotCertified() : ValidationError("map is not certified monotone") {}
};

/// An exhaustive scan was requested above its size threshold.
struct SizeLimitExceeded : Error {
  explicit SizeLimitExceeded(const std::string& what) : Error(what) {}
};

}  // namespace lfpkit

#endif  // LFPKIT_ERRORS_HPP
