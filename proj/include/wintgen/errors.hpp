#pragma once

#include <stdexcept>
#include <string>

namespace wintgen {

// Root of every error the toolkit raises. Each subclass maps to one failure
// category that the CLI turns into an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions, malformed input documents, misuse of an API.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of an operation (e.g. a non-unit
// vector handed to the light-cone lift).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

// Wrong causal type of a subspace (timelike where spacelike was required).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Rank deficiency or a vanishing quantity the computation divides by.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Expression evaluation hit a singularity; path names the offending
// sub-expression from the root down.
class EvaluationError : public Error {
 public:
  EvaluationError(std::string reason, std::string path)
      : Error(reason + " at " + path), reason_(std::move(reason)), path_(std::move(path)) {}
  const std::string& reason() const noexcept { return reason_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string reason_;
  std::string path_;
};

class UmbilicError : public Error {
 public:
  UmbilicError(const std::string& what, double rho_sq)
      : Error(what), rho_sq_(rho_sq) {}
  double rho_sq() const noexcept { return rho_sq_; }

 private:
  double rho_sq_;
};

// Canonical-frame fit could not reproduce the Wintgen pattern.
class FitError : public Error {
 public:
  FitError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A quantity that requires L != 0 (or similar) was requested where it vanishes.
class SingularInvariantError : public Error {
 public:
  using Error::Error;
};

// A documented precondition (e.g. null Weierstrass data) failed at runtime.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace wintgen
