#pragma once

#include <stdexcept>
#include <string>

namespace hilb {

// Domain/codomain or shape mismatch in a composition-like operation.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mixing real and complex carriers, or a real payload with nonzero imaginary part.
struct FieldError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Attempt to invert a scalar indistinguishable from zero.
struct ZeroScalarError : std::domain_error {
    using std::domain_error::domain_error;
};

// lift_isometry received a map that is not an isometry.
struct IsometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Equaliser search bound rejected; the message carries a cost estimate.
struct SearchBoundError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Matrix text format violation.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid check/suite configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace hilb
