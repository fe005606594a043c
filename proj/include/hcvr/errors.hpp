#pragma once

#include <stdexcept>
#include <string>

namespace hcvr {

// Caller passed arguments that violate an operation's preconditions.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well formed but exceeds a configured resource limit
// (simplex budget, exhaustion cap, search budget).
class capability_error : public std::runtime_error {
public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hcvr
