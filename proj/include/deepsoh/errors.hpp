#pragma once

#include <stdexcept>
#include <string>

namespace deepsoh {

/// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A diffusion step would push a node concentration outside [0, c_max].
class SaturationError : public Error {
 public:
  using Error::Error;
};

/// Butler-Volmer kinetics with a vanishing exchange current under load.
class KineticsSingularError : public Error {
 public:
  using Error::Error;
};

/// An electrode capacity or the lithium inventory has been exhausted.
class CellDeadError : public Error {
 public:
  using Error::Error;
};

/// A protocol step ran past its hard time cap without any termination firing.
class ProtocolStallError : public Error {
 public:
  using Error::Error;
};

/// Iterative estimation did not converge.
class EstimationFailedError : public Error {
 public:
  EstimationFailedError(const std::string& what, double residual_rms)
      : Error(what), residual_rms_(residual_rms) {}
  double residual_rms() const noexcept { return residual_rms_; }

 private:
  double residual_rms_;
};

/// Malformed or invalid user input, optionally tied to a line of a file.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace deepsoh
