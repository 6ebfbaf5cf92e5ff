#pragma once

#include <stdexcept>
#include <string>

namespace pcp {

/// Raised when a computation produces non-finite values or otherwise fails
/// numerically. Callers that reach this from a valid configuration should
/// treat it as a run failure (CLI exit code 1), not a usage error.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcp
