#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cw {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed polynomial text. `position` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Caller violated a documented precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// A configured budget (S-pairs, coefficient bits, iterations) ran out.
// Results are never truncated silently; this is thrown instead.
class ResourceError : public Error {
public:
    using Error::Error;
};

class FactorizationCutoff : public ResourceError {
public:
    FactorizationCutoff() : ResourceError("factorization cutoff exceeded") {}
    explicit FactorizationCutoff(const std::string& detail)
        : ResourceError("factorization cutoff exceeded: " + detail) {}
};

// A search over integer parameters found no admissible value.
class WindowExhausted : public Error {
public:
    using Error::Error;
};

// A morphism or curve failed one of the required hypotheses.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed. Signals a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace cw
