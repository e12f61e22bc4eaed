#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monomap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shapes that do not fit together
struct DimensionError : Error {
    using Error::Error;
};

// mathematically invalid input: singular matrix, bad fan, violated hypothesis
struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t position;
    std::string expected;
    ParseError(const std::string& msg, std::size_t pos, std::string exp)
        : Error(msg + " at position " + std::to_string(pos) +
                (exp.empty() ? std::string() : " (expected " + exp + ")")),
          position(pos), expected(std::move(exp)) {}
};

// budgets: term counts, iteration limits
struct ResourceError : Error {
    using Error::Error;
};

struct ConvergenceError : ResourceError {
    using ResourceError::ResourceError;
};

}  // namespace monomap
