#pragma once

#include <stdexcept>
#include <string>

namespace randfib {

// Bad user input: malformed flags, invalid seeds, violated preconditions.
class InvalidInputError : public std::invalid_argument {
public:
  explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Refusal to start or continue a computation that would blow the
// configured level or state budget.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure (a dual-route computation disagreed).
class InternalCheckError : public std::logic_error {
public:
  explicit InternalCheckError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace randfib
