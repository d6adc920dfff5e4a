#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

// Bad parameters or a violated precondition. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A discrete field does not cover the interval an integral needs.
class CoverageError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Non-finite integrand, divergent weight integral, negative density, ...
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace blowup
