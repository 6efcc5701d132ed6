#pragma once

#include <stdexcept>
#include <string>

namespace twistbetti {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, JSON files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid data: duplicate hyperplanes, singular monodromy, ...
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition (non-central input, trivial system, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A generic section could not be certified within the retry budget.
class GenericityError : public Error {
public:
    using Error::Error;
};

/// A chain complex failed the d∘d = 0 gate.
class ComplexError : public Error {
public:
    using Error::Error;
};

} // namespace twistbetti
