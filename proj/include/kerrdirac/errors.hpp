#pragma once

#include <stdexcept>
#include <string>

namespace kerrdirac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// 2k is not an odd integer.
class InvalidK : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class NonconvergentSeries : public Error {
 public:
  using Error::Error;
};

/// Base for failures of the angular eigenvalue solvers.
class AngularSolverError : public Error {
 public:
  using Error::Error;
};

class NotConverged : public AngularSolverError {
 public:
  using AngularSolverError::AngularSolverError;
};

class TrackingLost : public AngularSolverError {
 public:
  using AngularSolverError::AngularSolverError;
};

class EnergyOutOfRange : public Error {
 public:
  using Error::Error;
};

class KappaTooSmall : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public Error {
 public:
  using Error::Error;
};

}  // namespace kerrdirac
