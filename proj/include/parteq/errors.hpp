#pragma once

#include <stdexcept>

namespace parteq {

/* Raised when a numerical result cannot be certified to the requested
 * tolerance (tail bounds unreachable, iteration budgets exhausted,
 * rounding residuals above tol).  Argument validation uses
 * std::domain_error / std::invalid_argument instead. */
struct certification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace parteq
