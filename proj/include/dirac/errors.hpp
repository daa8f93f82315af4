#pragma once

#include "dirac/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirac {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `position` is the 0-based byte offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

/// A point query hit a vanishing denominator.
struct DomainError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

/// Matrix determinant vanishes identically as a rational function.
struct SingularMatrix : Error {
  using Error::Error;
};

/// Matrix is generically invertible but its determinant vanishes at the
/// requested point.
struct SingularAtPoint : Error {
  using Error::Error;
};

/// An operation was called on input that violates its documented contract.
struct PreconditionError : Error {
  using Error::Error;
};

/// Failure of the frame reduction; `step` is 0..4 for the reduction stages,
/// -1 for input validation.
struct NormalFormError : PreconditionError {
  NormalFormError(const std::string& what, int step)
      : PreconditionError(what), step(step) {}
  int step;
};

/// L ∩ (TQ ⊕ T*M) changes dimension along a slice.
struct ConstantDimensionError : PreconditionError {
  ConstantDimensionError(const std::string& what, Point a, Point b)
      : PreconditionError(what), first(std::move(a)), second(std::move(b)) {}
  Point first;
  Point second;
};

/// Structure file does not match the schema; `pointer` is a JSON pointer.
struct SchemaError : Error {
  SchemaError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer(pointer) {}
  std::string pointer;
};

}  // namespace dirac
