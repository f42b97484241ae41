#pragma once

#include <stdexcept>
#include <string>

namespace hyper_ricci {

/// Rejected input: malformed system, unknown vertex, violated precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its tolerance, or an internal
/// consistency check (which the theory says cannot fail) did fail.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyper_ricci
