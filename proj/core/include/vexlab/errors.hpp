#pragma once

#include <stdexcept>

namespace vexlab {

// Argument outside the mathematical domain of an operation (cube outside the
// box, lambda <= 0, f outside [0,1], ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Caller broke a documented precondition (empty corpus, wrong cube family,
// R < 1, zero norm where a ratio is requested).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Exponent with p_- <= 1 handed to an operation that needs p_- > 1.
struct UnsupportedExponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dyadic scale finer than the grid resolution.
struct ResolutionError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Malformed GF1 stream or config document.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vexlab
