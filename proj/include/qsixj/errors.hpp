#pragma once

#include <stdexcept>
#include <string>

namespace qsixj {

// Base for all library errors. kind() is a short machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Bad labels, violated preconditions, inconsistent requests.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}

 protected:
  ValidationError(std::string kind, const std::string& what)
      : Error(std::move(kind), what) {}
};

// Operation not defined for the requested deformation regime.
class UnsupportedRegime : public ValidationError {
 public:
  explicit UnsupportedRegime(const std::string& what)
      : ValidationError("unsupported-regime", what) {}
};

// Non-convergence, ambiguous eigenvalue assignment, failed verification.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

}  // namespace qsixj
