#pragma once

#include <stdexcept>
#include <string>

namespace thermoforms {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside a model's or function's validity region.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// S_e <= 0, so the temperature 1/S_e is not physical.
class NonPositiveTemperature : public Error {
 public:
  using Error::Error;
};

/// The second central moment is singular, so the fourth-moment form has a pole.
class SingularSigma2 : public Error {
 public:
  using Error::Error;
};

/// Every polynomial coefficient vanished.
class AllZero : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class QuadratureFail : public Error {
 public:
  using Error::Error;
};

}  // namespace thermoforms
