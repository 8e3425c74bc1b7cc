#ifndef KGRAPH_ERRORS_HPP
#define KGRAPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgraph {

// Malformed literal; position is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error("at position " + std::to_string(pos) + ": " + msg), position(pos) {}
    std::size_t position;
};

// Structurally invalid object (violated invariant, bad slot, kind mismatch).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace kgraph

#endif // KGRAPH_ERRORS_HPP
