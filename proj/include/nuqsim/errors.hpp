#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nuqsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gate kind was used where it has no matrix (Measure) or is malformed.
class InvalidGateError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A compiler pass was handed a circuit outside its supported subset.
class UnsupportedPassError : public Error {
 public:
  using Error::Error;
};

/// Inputs outside the physical or numerical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nuqsim
