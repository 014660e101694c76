#pragma once

#include <stdexcept>
#include <string>

namespace tsteval {

/// Base of every error the engine throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (datasets, artifacts, parses).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration, unknown metric ids, bad CLI usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsteval
