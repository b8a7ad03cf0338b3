#pragma once

#include <stdexcept>
#include <string>

namespace fracdde {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A table or sequence is too short for the requested index range.
class LengthError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The implicit step cannot be solved: a == h^{-alpha}.
class SolvabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity that is mathematically undefined for the given data
/// (for instance a decay index across a zero value).
class UndefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: a flag value, an initial-function spec or an input file.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fracdde
