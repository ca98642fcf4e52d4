#pragma once

#include <stdexcept>
#include <string>

namespace affine {

/// Dense export was requested above the configured qubit limit.
struct DenseLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical-form extraction found a constraint pattern that forces the
/// signature matrix to be singular (zero row, zero column, or dependent rows).
struct SingularDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tableau extraction produced a conjugation image that is not a Pauli
/// operator. This must never fire for affine unitaries; the property tests
/// target it directly.
struct InternalTheoremViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A contraction produced a scalar outside the values it is guaranteed to
/// take. Must never fire; test target.
struct InternalInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Text-format parse failure with source position.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

}  // namespace affine
