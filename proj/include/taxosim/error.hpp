#pragma once

#include <stdexcept>
#include <string>

namespace taxosim {

// Base class of every user/data error the library reports. Anything else
// escaping the public API (std::logic_error, bad_alloc, ...) is an internal
// invariant violation; the CLI maps the two cases to exit codes 1 and 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Unknown concept id, word, relation, or column name.
class LookupError : public Error {
public:
    using Error::Error;
};

// Input is well-formed but the requested value does not exist:
// unreachable pair, no common subsumer, infinite information content, ...
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace taxosim
