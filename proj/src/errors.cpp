#include "hierstat/errors.hpp"

#include <sstream>

namespace hierstat {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << "; ";
    os << items[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

AccuracyError::AccuracyError(double estimate, double error_bound)
    : NumericalError("quadrature did not converge: estimate " + std::to_string(estimate) +
                     ", error bound " + std::to_string(error_bound)),
      estimate_(estimate),
      error_bound_(error_bound) {}

NoConvergence::NoConvergence(const std::string& what, double residual_n, double residual_u)
    : NumericalError(what + " (residual n " + std::to_string(residual_n) + ", residual u " +
                     std::to_string(residual_u) + ")"),
      residual_n_(residual_n),
      residual_u_(residual_u) {}

ImbalancedEntry::ImbalancedEntry(std::size_t index, long long discrepancy)
    : std::runtime_error("ledger entry " + std::to_string(index) +
                         " violates conservation by " + std::to_string(discrepancy) +
                         " minor units"),
      index_(index),
      discrepancy_(discrepancy) {}

}  // namespace hierstat
