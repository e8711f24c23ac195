#pragma once

#include <stdexcept>
#include <string>

namespace mema {

// Malformed letter/word/renaming input (empty token, whitespace, reserved separator).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reference to a variable, history or layer outside a memory context's domain.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (invalid automaton, mismatched transition, size cap).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed external document (automaton JSON, run JSON, DIMACS/QDIMACS).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mema
