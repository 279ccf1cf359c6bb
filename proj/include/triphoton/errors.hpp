#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace triphoton {

// Bad argument to a library call (shape mismatch, invalid subsystem set, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical setup that cannot resolve the requested quantity, e.g. a
// quadrature span narrower than the filters it integrates.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that is well-formed but carries no signal (all-zero surface, grid
// that misses the spectral support).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FWHM requested on a curve without exactly two half-maximum crossings.
class AmbiguousWidth : public std::runtime_error {
 public:
  AmbiguousWidth(const std::string& what, std::vector<double> crossings)
      : std::runtime_error(what), crossings_(std::move(crossings)) {}

  const std::vector<double>& crossings() const noexcept { return crossings_; }

 private:
  std::vector<double> crossings_;
};

// Config document that violates the schema; key() is the dotted path.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace triphoton
