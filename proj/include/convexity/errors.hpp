#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace convexity {

// Base for all library errors. `kind` is a stable machine-readable tag,
// `detail` is free-form human text.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Bad inputs: malformed geometry, out-of-range arguments, unreadable files.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Failures arising during computation on valid inputs.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace convexity
