#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kentropy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (duplicates, mismatched object sets, bad cells).
class InputError : public Error {
public:
    using Error::Error;
};

/// A value type could not be built because its structural invariants fail (e.g. n < 2).
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// A numeric argument lies outside the domain where a formula is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Boundary values whose ordering contradicts the sign of the model slope.
class SignError : public Error {
public:
    using Error::Error;
};

/// Ranking text that cannot be turned into a weak order. `position` is a 0-based
/// byte offset into the source text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A structurally broken ranking (empty group, dangling operator, stray character).
class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace kentropy
