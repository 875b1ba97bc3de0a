#pragma once

#include <stdexcept>
#include <string>

namespace pcsym {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A distribution or scheme could not be built from the given parts.
class InvalidConstruction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs are individually valid but violate an operation's hypothesis
/// (common center, shared support, parity of a design, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pcsym
