#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace upsilon {

/// Malformed knot expression or serialized input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          offset_(offset), line_(line), column_(column) {}

    std::size_t offset() const noexcept { return offset_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t offset_;
    std::size_t line_;
    std::size_t column_;
};

/// Input is well formed but outside the mathematical domain of the operation
/// (non-coprime parameters, a cable that is not an L-space knot, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two computations that must agree did not. Never swallowed.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace upsilon
