#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlearn {

// Malformed or out-of-range input supplied by a caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A generator or construction cannot satisfy its requested invariants.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A learner refused to start because its planned demand is above the cap.
class BudgetRefused : public std::runtime_error {
 public:
  BudgetRefused(const std::string& what, double demand, double cap)
      : std::runtime_error(what), demand_(demand), cap_(cap) {}
  double demand() const { return demand_; }
  double cap() const { return cap_; }

 private:
  double demand_;
  double cap_;
};

// A subroutine call used more queries or rounds than its proven budget.
class BudgetViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The oracle's round cap was reached; the learner must stop asking.
class RoundLimitReached : public std::runtime_error {
 public:
  explicit RoundLimitReached(std::size_t cap)
      : std::runtime_error("round cap of " + std::to_string(cap) + " reached"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace hyperlearn
