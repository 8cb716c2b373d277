#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kcgen {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A brute-force enumeration or result set would exceed the given cap.
struct CapExceeded : Error {
  using Error::Error;
};

/// A bit-word length does not match the expected dimension.
struct LengthMismatch : Error {
  using Error::Error;
};

/// A constraint scope is too large to materialize into canonical clauses.
struct ScopeTooLarge : Error {
  using Error::Error;
};

/// Generator parameters violate a mode invariant (e.g. m != k*b).
struct ParameterMismatch : Error {
  using Error::Error;
};

/// Input text could not be parsed; carries the 1-based line number.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

/// Exact computation requested on an instance above its hard size limit.
struct TooLarge : Error {
  using Error::Error;
};

struct NotDecomposable : Error {
  using Error::Error;
};

struct NotDeterministic : Error {
  using Error::Error;
};

/// Compilation aborted; no circuit was emitted.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// An assignment does not cover all variables of the circuit under evaluation.
struct IncompleteAssignment : Error {
  using Error::Error;
};

struct CyclicCircuit : Error {
  using Error::Error;
};

struct MultipleSinks : Error {
  using Error::Error;
};

}  // namespace kcgen
