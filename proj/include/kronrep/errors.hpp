#pragma once

#include <stdexcept>
#include <string>

namespace kronrep {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (bad composition, not a root, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Operation is undefined for the given number of arrows.
class UnsupportedIndexError : public DomainError {
public:
    using DomainError::DomainError;
};

// Exact integer arithmetic left the supported 64-bit range.
class ArithmeticRangeError : public Error {
public:
    using Error::Error;
};

// Exhaustive search refused because it exceeds the configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace kronrep
