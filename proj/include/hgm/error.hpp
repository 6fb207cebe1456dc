#pragma once

#include <stdexcept>
#include <string>

namespace hgm {

// A documented precondition of an operation was violated by its input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured evaluation budget.
class BudgetError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Something that cannot happen for valid input did happen.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace detail
}  // namespace hgm
