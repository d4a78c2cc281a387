#pragma once

#include <stdexcept>
#include <string>

namespace catsp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input document does not match the expected schema. `field` names the
// offending member (dotted path).
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ImputationError : public Error {
 public:
  using Error::Error;
};

// A metric was requested on a route too short to define it.
class MetricError : public Error {
 public:
  using Error::Error;
};

class IncomparableRoutesError : public Error {
 public:
  using Error::Error;
};

}  // namespace catsp
