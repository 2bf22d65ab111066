#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpx {

/// Raised when a multiplication table fails a group axiom.
class NotAGroup : public std::runtime_error {
 public:
  explicit NotAGroup(const std::string& reason)
      : std::runtime_error("not a group: " + reason), reason_(reason) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

/// Raised when a backtracking isomorphism search runs out of nodes.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  explicit SearchBudgetExceeded(std::uint64_t nodes)
      : std::runtime_error("isomorphism search budget exceeded after " + std::to_string(nodes) +
                           " nodes"),
        nodes_(nodes) {}
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

/// Bad user input (even or too small m, n, malformed flags).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter tuple violating its type invariants.
class InvalidTuple : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A well-formed tuple that fails one of the admissibility conditions.
class InadmissibleTuple : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The constructor produced a table that is not a group or misses a relation.
/// Always an implementation bug, never bad input.
class ConstructionInconsistent : public std::logic_error {
 public:
  explicit ConstructionInconsistent(const std::string& relation)
      : std::logic_error("construction inconsistent: " + relation), relation_(relation) {}
  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

/// The oracle seed space is larger than the configured limit.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("seed space " + std::to_string(required) + " exceeds budget " +
                           std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace dpx
