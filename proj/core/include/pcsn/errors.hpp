#pragma once

#include <stdexcept>
#include <string>

namespace pcsn {

/// Input violates a documented precondition (bad instance, bad argument).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Input is valid but exceeds a configured enumeration budget.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pcsn
