#pragma once

#include <stdexcept>
#include <string>

namespace pendular {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure did not reach its tolerance (basis truncation cap,
/// optimizer iteration cap, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RootNotBracketed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoOnsetFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LinearityCheckFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonPhysicalDensity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Failures of the least-squares fitter.
class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularNormalMatrix : public FitError {
 public:
  using FitError::FitError;
};

class MaxIterations : public FitError {
 public:
  using FitError::FitError;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AsymmetricSites : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class OutOfLinearRegime : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidSpec : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace pendular
