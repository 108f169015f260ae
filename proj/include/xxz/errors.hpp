#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class MonotonicityError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Requested combination of method and size cannot be served.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed command line or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace xxz
