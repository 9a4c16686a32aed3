#ifndef TIM_ERRORS_HPP
#define TIM_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "tim/types.hpp"

namespace tim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: bad line, bad token, duplicate pair, index out of range.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The text parses but the network breaks a structural rule
// (PLACE-ORDER, COVER-D, COVER-S).  Carries the first violation found.
class StructureError : public Error {
 public:
  StructureError(Violation v, const std::string& what) : Error(what), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

// An operation that requires convexity was handed a non-convex network.
class NotConvex : public Error {
 public:
  NotConvex(Violation v, const std::string& what) : Error(what), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

// A message argument does not name a desired pair of the topology.
class UnknownMessage : public Error {
 public:
  UnknownMessage(Message m, const std::string& what) : Error(what), message_(m) {}
  Message message() const { return message_; }

 private:
  Message message_;
};

// The left-most pair is not a desired link.  Unreachable on valid convex
// input; kept as a loud guard rather than silent misbehavior.
class BaseCaseMissing : public Error {
 public:
  using Error::Error;
};

// Exact search refused: message count above the configured budget.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

// greedy_partition was handed a schedule that is not the left-to-right
// safe greedy schedule of the same topology.
class ScheduleMismatch : public Error {
 public:
  using Error::Error;
};

// An internal certified property failed (cyclic block, bad wrap ordering).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// eliminate() would remove every source or every destination.
class EmptyResult : public Error {
 public:
  using Error::Error;
};

// eliminate() left a surviving node with no desired link.
class CoverageLost : public Error {
 public:
  CoverageLost(NodeRef node, const std::string& what) : Error(what), node_(node) {}
  NodeRef node() const { return node_; }

 private:
  NodeRef node_;
};

class UnknownFixture : public Error {
 public:
  using Error::Error;
};

// Rejection sampling ran out of attempts; message carries acceptance stats.
class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would scan more candidates than the budget allows.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// simulate_xor_code was handed a schedule that is not a side-information clique.
class NotAClique : public Error {
 public:
  using Error::Error;
};

}  // namespace tim

#endif  // TIM_ERRORS_HPP
