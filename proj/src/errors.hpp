#pragma once

#include <stdexcept>
#include <string>

namespace fermicav {

// Invalid or inconsistent run configuration (bad JSON, unknown keys,
// out-of-range values). Maps to exit code 2 at the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check exceeded its configured tolerance. Maps to exit code 3.
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure, always carries the offending path. Maps to exit code 4.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, const std::string& path)
      : std::runtime_error(what + ": " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Adaptive quadrature could not certify the requested absolute tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved_error() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace fermicav
