#pragma once

#include <stdexcept>
#include <string>

namespace cbdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class PathInconsistency : public Error {
 public:
  using Error::Error;
};

class ClassInconsistency : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NotStochastic : public Error {
 public:
  using Error::Error;
};

/// A configurable resource cap (element count, fiber size, S-pair queue) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: shapes, files, polynomial text.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbdp
