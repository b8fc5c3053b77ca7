#ifndef CROSSDIFF_ERROR_HPP
#define CROSSDIFF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crossdiff {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters or run configuration. Carries the offending
/// config line (0 when the error did not come from a config file).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// NaN or Inf found in a field. `index` is the flat index of the first bad value.
class CorruptionError : public Error {
 public:
  CorruptionError(const std::string& what, std::size_t index)
      : Error(what + " (first non-finite value at flat index " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// An iterative method failed to converge within its cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (e.g. non-monotone time stamps, bad checkpoint file).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace crossdiff

#endif  // CROSSDIFF_ERROR_HPP
