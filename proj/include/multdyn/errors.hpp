#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace multdyn {

/// Input outside an operation's mathematical domain (zero where nonzero is
/// required, a linear polynomial where the theory needs degree >= 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured size or effort limit was reached before the computation
/// finished. `completed` carries the largest parameter value that did finish,
/// when the operation is incremental.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what,
                          std::optional<long> completed = std::nullopt)
      : std::runtime_error(what), completed_(completed) {}

  std::optional<long> completed() const { return completed_; }

 private:
  std::optional<long> completed_;
};

/// Raised when an internal identity that must hold by construction fails.
/// Seeing one of these is a bug, never a property of the input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}
inline void ensure(bool ok, const std::string& msg) {
  if (!ok) throw InvariantViolation(msg);
}
}  // namespace detail

}  // namespace multdyn
