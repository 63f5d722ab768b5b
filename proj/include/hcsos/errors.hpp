#pragma once

#include <stdexcept>
#include <string>

namespace hcsos {

/// Parameter or argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested measure does not exist at the given parameters
/// (e.g. an asymmetric measure above the critical coupling).
class MeasureNotFound : public DomainError {
public:
    using DomainError::DomainError;
};

/// Requested quantity is not available for these parameters.
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A post-condition that should hold by construction was violated.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An iteration produced a non-positive or non-finite intermediate value.
class NumericalDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hcsos
