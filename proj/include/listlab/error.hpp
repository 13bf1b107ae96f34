#pragma once

#include <stdexcept>
#include <string>

namespace listlab {

// Mismatched (n, q) or malformed value.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Parameters outside an operation's admissible region.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive enumeration would exceed its budget; names the budget.
struct ResourceError : std::runtime_error {
    ResourceError(const std::string& budget_name, double required, double budget)
        : std::runtime_error(budget_name + " budget exceeded: need " + std::to_string(required) +
                             ", budget " + std::to_string(budget)),
          budget_name(budget_name) {}
    std::string budget_name;
};

// Bad scenario configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace listlab
