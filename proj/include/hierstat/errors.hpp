#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hierstat {

/// Invalid input: a precondition or type invariant was violated.
/// Carries every violation found, not just the first one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what), violations_{what} {}
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Mathematical domain error (e.g. Bose-Einstein occupation at lambda >= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for failures of an iterative or adaptive numerical procedure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature hit its refinement limit before meeting tolerance.
class AccuracyError : public NumericalError {
 public:
  AccuracyError(double estimate, double error_bound);

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// The (n, u) -> (alpha, beta) map is rank deficient at the requested point.
class SingularInversion : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Newton iteration exhausted its budget.
class NoConvergence : public NumericalError {
 public:
  NoConvergence(const std::string& what, double residual_n, double residual_u);

  double residual_n() const noexcept { return residual_n_; }
  double residual_u() const noexcept { return residual_u_; }

 private:
  double residual_n_;
  double residual_u_;
};

/// A ledger record violates per-entry money conservation.
class ImbalancedEntry : public std::runtime_error {
 public:
  ImbalancedEntry(std::size_t index, long long discrepancy);

  std::size_t index() const noexcept { return index_; }
  long long discrepancy() const noexcept { return discrepancy_; }

 private:
  std::size_t index_;
  long long discrepancy_;
};

/// Accumulates violations and throws a single ValidationError if any exist.
class Violations {
 public:
  void check(bool ok, std::string message) {
    if (!ok) items_.push_back(std::move(message));
  }
  /// Collect the violations carried by an already-thrown error.
  void absorb(const ValidationError& e) {
    items_.insert(items_.end(), e.violations().begin(), e.violations().end());
  }
  bool empty() const noexcept { return items_.empty(); }
  void throw_if_any() const {
    if (!items_.empty()) throw ValidationError(items_);
  }

 private:
  std::vector<std::string> items_;
};

}  // namespace hierstat
