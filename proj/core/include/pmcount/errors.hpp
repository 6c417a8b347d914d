#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmcount {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold for its inputs.
struct PreconditionError : Error {
  using Error::Error;
};

// Malformed graph or decomposition file.
struct ParseError : Error {
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

struct NotPlanarError : Error {
  using Error::Error;
};

// The graph is outside the class a mode can handle (e.g. has a K3,3 minor).
struct NotInClassError : Error {
  using Error::Error;
};

struct InvalidDecompositionError : Error {
  using Error::Error;
};

// Internal cross-check failed; indicates a bug rather than bad input.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace pmcount
