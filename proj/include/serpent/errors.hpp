#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace serpent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised when the averaged link heading has no horizontal component.
class DegenerateHeadingError : public Error {
 public:
  explicit DegenerateHeadingError(double last_valid_yaw)
      : Error("virtual chassis heading is degenerate"), last_valid_yaw_(last_valid_yaw) {}

  double last_valid_yaw() const { return last_valid_yaw_; }

 private:
  double last_valid_yaw_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, std::size_t index)
      : Error(what + " (first offending index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class MonotonicClockError : public Error {
 public:
  using Error::Error;
};

class AssociationError : public Error {
 public:
  using Error::Error;
};

}  // namespace serpent
