#pragma once

#include <stdexcept>
#include <string>

namespace wenott {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched tensor shapes, out-of-range indices, malformed configuration.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf input, SVD failure, singular pivot matrices.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Unphysical fluid state (nonpositive density or pressure).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace wenott
