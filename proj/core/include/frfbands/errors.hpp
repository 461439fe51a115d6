#pragma once

#include <stdexcept>
#include <string>

namespace frfbands {

/// Input data violates a documented precondition or type invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation cannot proceed because the data are numerically degenerate
/// (e.g. too few samples for a variance estimate).
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace frfbands
