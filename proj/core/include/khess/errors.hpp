#pragma once

#include <stdexcept>
#include <string>

namespace khess {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value lies outside an operation's domain (n, k, R, grid size, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An internal invariant broke: a fractional power of a negative number,
/// a shooting run that never crosses zero, non-finite samples.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// The explicit time step was too large, or the solution grew in max-norm.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// The evolving profile left the k-admissible cone beyond tolerance.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// A whole-space run let its support reach the truncation radius.
class DomainTooSmallError : public Error {
public:
    using Error::Error;
};

}  // namespace khess
