#pragma once

#include <stdexcept>
#include <string>

namespace spdmp {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix required to be symmetric positive definite is not (smallest
// eigenvalue at or below the relative floor).
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

// Two operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A dimension is invalid on its own (non-square entries, vector length not
// of the form m(m+1)/2, ...).
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// A scalar parameter or input value is outside its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// The sum of basis activations underflowed to zero; the phase value is far
// outside the range the basis was built for.
class DegenerateActivation : public Error {
 public:
  using Error::Error;
};

// The regression normal equations are singular beyond what regularization
// can absorb.
class RankDeficiency : public Error {
 public:
  using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdmp
