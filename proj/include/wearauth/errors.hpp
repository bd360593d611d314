#pragma once

#include <stdexcept>
#include <string>

namespace wearauth {

// Bad or malformed input data (missing files, broken rows, invariant
// violations). Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Caller misuse: invalid arguments, unknown config keys. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver hit its iteration cap. Exit code 4.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace wearauth
