#pragma once

#include <stdexcept>
#include <string>

namespace graspa {

/// Bad input or a violated precondition. The CLI maps it to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two nodes collapse onto the same mapped value, or the map reorders them.
class InjectivityViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Input outside the hypotheses a closed-form result was derived under.
/// Raised instead of guessing.
class UnsupportedCase : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Non-finite intermediate (map blowup, overflow). The CLI maps it to exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace graspa
