#pragma once

#include <stdexcept>
#include <string>

namespace scalefree {

/// Raised when an operation's mathematical precondition is violated
/// (non-prime modulus, value outside the scale band, infeasible schedule, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace scalefree
