#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weakval {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation
/// (log of zero, division by zero, negative width parameter, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Pre- and postselected states are (numerically) orthogonal, so the
/// weak value is undefined.
class OrthogonalSelection : public Error {
 public:
  using Error::Error;
};

/// The detector wavefunction vanishes at the extraction point.
class ZeroWavefunction : public Error {
 public:
  using Error::Error;
};

/// An expression references a variable with no binding.
class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// Expression text does not conform to the grammar. Carries the byte
/// offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// The sampling density integrates to (numerically) zero.
class DegenerateDensity : public Error {
 public:
  using Error::Error;
};

/// A scenario file is syntactically broken.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A scenario file parses but violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace weakval
