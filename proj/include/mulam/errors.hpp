#pragma once

#include <stdexcept>

namespace mulam {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector / matrix dimension disagreement.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad scalar or structural argument (non-finite entry, t outside [0,1], p < 1, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// A point left the declared domain of a map or a set operation.
class DomainEscapeError : public Error {
 public:
  using Error::Error;
};

/// A documented hypothesis failed its sampled check.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A pipeline step declined to certify (zero margin, zero inradius, ...).
class RefusalError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Rejection sampling exhausted its trial budget.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Linear-algebra failure: singular solve or rank-deficient fit.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Fixture construction or (de)serialization failure.
class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace mulam
