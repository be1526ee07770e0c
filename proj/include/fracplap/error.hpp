#pragma once

#include <stdexcept>
#include <string>

namespace fracplap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two fields (or a field and a kernel) live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The lagged-implicit linear solve did not reach its residual target.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// An input lies outside the hypothesis under which a functional is defined.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The discretized kernel fails the admissibility floor.
class KernelError : public Error {
 public:
  using Error::Error;
};

/// A special-function evaluation would overflow double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem; `path()` is a JSON-pointer to the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// File read/write failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracplap
