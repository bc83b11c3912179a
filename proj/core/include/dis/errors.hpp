#pragma once

#include <stdexcept>

namespace dis {

// Value outside a register's range, or an invalid mode/index argument.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Unknown register, mismatched layouts or widths, malformed cut.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Zero vector where a direction is required, or a zero-probability outcome.
class DegenerateStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation's hypothesis does not hold (pointer not sharp, oracle not 2-to-1, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Oracle parameters that cannot produce a valid function table.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The collision system f(x1) = f(x2), x1 != x2 has no solution.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dis
