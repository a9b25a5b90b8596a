#pragma once

#include <stdexcept>
#include <string>

namespace acm {

/// Malformed or inconsistent configuration (missing parameter set, bad
/// profile, invalid mix weights). The CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed a value outside an operation's domain.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model invariant would be violated (e.g. qc < tc).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Least-squares design has fewer independent rows than active columns.
class UnderdeterminedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pearson correlation requested on data without variance.
class UndefinedCorrelationError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace acm
