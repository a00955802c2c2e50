#pragma once

#include <stdexcept>
#include <string>

namespace lpacf {

/// Failure category; the CLI maps each onto its exit status.
enum class ErrorKind {
  invalid_argument,
  data,
  boundary,
  numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class BoundaryError : public Error {
 public:
  explicit BoundaryError(const std::string& what)
      : Error(ErrorKind::boundary, what) {}
};

/// Raised when a covariance system stays singular after regularization.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double condition_estimate)
      : Error(ErrorKind::numerical, what), condition_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace lpacf
