#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A kernel or potential was evaluated at (or too close to) a pole.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Two coordinates came closer than the collision epsilon.
class CollisionError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator needed a step below its floor.
class StepUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Invalid model parameters or scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A hydrodynamic field was requested where the density vanishes.
class ZeroDensityError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point too close to the edge of the particle cloud.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

}  // namespace calogero
