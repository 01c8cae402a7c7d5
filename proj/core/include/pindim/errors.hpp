#pragma once

#include <stdexcept>
#include <string>

namespace pindim {

// Every library failure derives from Error so callers can map it to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class EnvelopeViolation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Malformed input documents (bad JSON, wrong shape). Distinct from invariant violations.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace pindim
