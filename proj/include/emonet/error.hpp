#pragma once

#include <stdexcept>
#include <string>

namespace emonet {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kData = 3,
  kDegenerate = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kData; }
};

// Bad configuration or invalid arguments supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConfig; }
};

// Malformed or inconsistent input data (lexicon rows, posts, artifacts).
class DataError : public Error {
 public:
  using Error::Error;
};

// A statistic is undefined for the given input (constant vectors, empty snapshots).
class DegenerateError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kDegenerate; }
};

}  // namespace emonet
