#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grope {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a structural precondition (out-of-range generator,
/// malformed tree, unknown identifier).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two words over different alphabets were combined.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// Text could not be parsed; `position()` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("position " + std::to_string(position) + ": " + message), position_(position), message_(message)
    {
    }
    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

/// A rewrite was requested whose preconditions do not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Splitting would grow the grope past the configured size bounds.
class GrowthLimitExceeded : public Error {
public:
    using Error::Error;
};

/// A dyadic piece has no two caps with the same group element.
class PigeonholeFailure : public Error {
public:
    explicit PigeonholeFailure(std::string piece)
        : Error("pigeonhole failure: no duplicate cap label in piece " + piece), piece_(std::move(piece))
    {
    }
    const std::string& piece() const noexcept { return piece_; }

private:
    std::string piece_;
};

/// Coefficient arithmetic left the range of the 64-bit integer type.
class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

} // namespace grope
