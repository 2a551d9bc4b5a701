#pragma once

#include <stdexcept>
#include <string>

namespace ctrw {

// Invalid or non-normalizable model parameters.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (x not in [0,b], t <= 0, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation asked of the wrong regime or model class.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not available for this model kind.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown: singular systems, residue leakage, contour failures.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested evaluation outside a precomputed grid.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ctrw
