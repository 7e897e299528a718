#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpa {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A VertexRef or component name that does not exist in the graph.
class BadReference : public Error {
public:
    using Error::Error;
};

/// An operation was called with an argument violating its precondition
/// (e.g. a non-hereditary set handed to saturated_closure).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The graph fails validate(); the message lists the violations.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// A family was requested that needs infinitely many components.
class Unrepresentable : public Error {
public:
    using Error::Error;
};

/// Juxtaposed paths in an element expression do not compose.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// Syntax or semantic error in a graph document or element expression.
/// Line numbers are 1-based; 0 means "not tied to a line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace lpa
