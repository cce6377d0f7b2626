#pragma once

#include <stdexcept>
#include <string>

namespace client {

// Base for every library error. The CLI maps the concrete type to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or extent mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation precondition (non-scalar loss, bad index...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unreadable, malformed or insufficient input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Checkpoint container problems: bad magic, version, truncation, config mismatch.
class CheckpointError : public DataError {
 public:
  using DataError::DataError;
};

// Non-finite losses or gradients.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace client
