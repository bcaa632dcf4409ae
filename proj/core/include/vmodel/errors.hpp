#pragma once

#include <stdexcept>
#include <string>

namespace vmodel {

// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A caller violated an operation's precondition (bad index, shape mismatch, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed; indicates a bug or an input that
// slipped past validation (e.g. a non-group passed as a group).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace vmodel
