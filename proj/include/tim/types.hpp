#ifndef TIM_TYPES_HPP
#define TIM_TYPES_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tim {

enum class NodeKind { Source, Destination };

// One node of the line network, 1-based within its kind ("S3", "D10").
struct NodeRef {
  NodeKind kind = NodeKind::Source;
  int index = 0;

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

inline NodeRef source_ref(int index) { return {NodeKind::Source, index}; }
inline NodeRef destination_ref(int index) { return {NodeKind::Destination, index}; }

std::string to_token(NodeRef n);

// Every (source, destination) pair carries exactly one label.  Weak is the
// default: the destination cannot hear the source at all.
enum class LinkLabel : std::uint8_t { Weak = 0, Desired = 1, Interfering = 2 };

// A unicast message, identified by the desired pair that carries it.
struct Message {
  int source = 0;
  int destination = 0;

  friend auto operator<=>(const Message&, const Message&) = default;
};

std::string to_string(const Message& m);  // "S1->D1"

enum class Rule {
  DCa, DCb, DCc, DCd,  // destination-side convexity
  SCa, SCb, SCc, SCd,  // source-side convexity
  CoverD, CoverS,      // every destination / source has a desired link
  PlaceOrder,          // placement lists each kind in increasing index order
};

const char* rule_name(Rule r);  // "DC-a", ..., "COVER-D", "PLACE-ORDER"

struct Violation {
  Rule rule = Rule::DCa;
  std::vector<NodeRef> witness;  // nodes instantiating the violated rule

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

}  // namespace tim

#endif  // TIM_TYPES_HPP
