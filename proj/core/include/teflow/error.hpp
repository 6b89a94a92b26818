#pragma once

#include <stdexcept>
#include <string>

namespace teflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or ambiguous input data. Always fatal for a run.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A sequence is too short for the requested operation (lag, pattern span).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace teflow
