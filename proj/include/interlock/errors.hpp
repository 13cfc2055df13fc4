#pragma once

#include <stdexcept>
#include <string>

namespace interlock {

/* Base class for everything this library throws on purpose. */
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* Bad user-supplied configuration, program file, or CLI input. The CLI
 * maps these to exit code 2; everything else derived from Error maps to 3. */
class ConfigError : public Error {
public:
  using Error::Error;
};

/* File could not be parsed; carries the 1-based row/line that failed. */
class ParseError : public ConfigError {
public:
  ParseError(const std::string& what, std::size_t row)
      : ConfigError(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const { return row_; }

private:
  std::size_t row_;
};

class InvalidGeometry : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidWeightTransfer : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/* Anchored-motion radius collapsed below the configured epsilon. */
class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

class TractionLimitExceeded : public Error {
public:
  using Error::Error;
};

class InvalidProgram : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidTiming : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class EmptyWindow : public Error {
public:
  using Error::Error;
};

class BadBoundaries : public Error {
public:
  using Error::Error;
};

class DegenerateFit : public Error {
public:
  using Error::Error;
};

class CalibrationFailed : public Error {
public:
  using Error::Error;
};

class NoOverlap : public Error {
public:
  using Error::Error;
};

class InvalidCalibration : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidGoal : public ConfigError {
public:
  using ConfigError::ConfigError;
};

}  // namespace interlock
