#pragma once
#include <stdexcept>
#include <string>

namespace sospencil {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input. For polynomial text, `pos` is a byte offset; structured
// inputs (JSON artifacts) use the position-free form and leave pos at npos.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), pos(pos) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
    std::size_t pos = std::string::npos;
};

struct DimensionError : Error {
    using Error::Error;
};

// Basis enumeration refused: would exceed the configured monomial cap.
struct CapExceededError : Error {
    using Error::Error;
};

// eval_resolvent hit a point where the retained block is singular.
struct SingularBlockError : Error {
    using Error::Error;
};

// lift_ambiguity: no symmetric completion annihilates the basis vector.
struct NotLiftableError : Error {
    using Error::Error;
};

// An operation's documented precondition failed an exact check.
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace sospencil
