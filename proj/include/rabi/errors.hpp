#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Invalid input: bad coupling vector, dimension mismatch, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The spectrum is too close to degenerate for Lagrange-Sylvester interpolation.
class DegenerateSpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rabi
