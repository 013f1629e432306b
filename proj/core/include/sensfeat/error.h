#pragma once

#include <stdexcept>
#include <string>

namespace sensfeat {

// Base of every error raised by the library. The three subclasses map onto
// distinct exit codes in the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid schema, flags or parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that violates the schema or a precondition of an operation.
class DataError : public Error {
 public:
  using Error::Error;
};

// A dense solve or decomposition that failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sensfeat
