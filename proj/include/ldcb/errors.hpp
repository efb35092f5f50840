#pragma once

#include <stdexcept>
#include <string>

namespace ldcb {

// Malformed input: bad indices, arity mismatches, invalid rule parameters.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Text that could not be parsed; line is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

// A solver was asked for a parameter regime it does not cover.
struct UnsupportedParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured enumeration or search limit fired.
struct ResourceExceeded : std::runtime_error {
    std::string limit;
    ResourceExceeded(std::string which, const std::string& msg)
        : std::runtime_error(msg), limit(std::move(which)) {}
};

// Broken internal invariant (a produced witness failed verification, etc).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ldcb
