#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace annihilant {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the text parser; carries the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Operands live over different coordinate spaces.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Numeric evaluation with an unbound coordinate or parameter, or a
// parameter value that makes a coefficient undefined.
class EvalError : public Error {
public:
    using Error::Error;
};

// The inhomogeneity (or one of its terms) is outside what the solution
// strategy can handle. The CLI maps this to exit code 2.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// An internal certificate failed: a produced solution did not pass its own
// symbolic re-check. Indicates a bug, never user error.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace annihilant
