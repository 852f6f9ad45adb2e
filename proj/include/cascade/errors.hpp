#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cascade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (node out of universe,
/// window not rho-closed, mismatched index sets, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A finite truncation ran out of room (e.g. no fresh nodes left in the universe).
/// Signals the desk-scale cutoff, not a failure of the underlying statement.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Generating an identity where a genuine generator is required.
class DegenerateInputError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Three trace profiles are not pairwise distinct.
class NotTraceSeparatedError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A closed permutation group failed the 2-group certificate.
class CertificateError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cascade
