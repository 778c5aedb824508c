#pragma once

#include <stdexcept>
#include <string>

namespace levysup {

// Raised when a numerical routine cannot deliver a trustworthy result
// (non-converged quadrature surfaced by a formula, NaN integrand,
// series out of its stable domain). Maps to CLI exit status 1.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace levysup
