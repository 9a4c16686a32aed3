#ifndef TIM_TOPOLOGY_HPP
#define TIM_TOPOLOGY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tim/types.hpp"

namespace tim {

// Strict left-to-right order of all sources and destinations on the line.
// Positions are 0-based; two nodes never share a position.
class Placement {
 public:
  Placement() = default;

  // order must contain each node of each kind at most once, indices >= 1.
  explicit Placement(std::vector<NodeRef> order);

  // Builds a placement from a left-to-right kind pattern, numbering each
  // kind 1.. in order of appearance (so it satisfies PLACE-ORDER by
  // construction).
  static Placement interleaving(const std::vector<NodeKind>& kinds);

  const std::vector<NodeRef>& order() const { return order_; }
  bool contains(NodeRef n) const;
  int position(NodeRef n) const;  // throws std::invalid_argument if absent
  bool before(NodeRef a, NodeRef b) const { return position(a) < position(b); }
  int count(NodeKind kind) const;
  // Number of nodes of `kind` placed strictly left of n.
  int count_before(NodeKind kind, NodeRef n) const;

  friend bool operator==(const Placement&, const Placement&) = default;

 private:
  std::vector<NodeRef> order_;
  std::vector<int> source_pos_;  // index-1 -> position, -1 if absent
  std::vector<int> dest_pos_;
};

// A one-dimensional cellular network: T sources and K destinations in a
// strict total order, plus a T x K label matrix.  Holding a Topology value
// implies nothing about convexity; non-convex networks are representable
// and validated explicitly.
class Topology {
 public:
  Topology() = default;

  // labels has T*K entries, source-major: labels[(s-1)*K + (d-1)].
  // Throws std::invalid_argument on size mismatches; structural rules
  // (PLACE-ORDER, coverage) are checked separately by check_structure().
  Topology(int num_sources, int num_destinations, Placement placement,
           std::vector<LinkLabel> labels);

  int num_sources() const { return num_sources_; }
  int num_destinations() const { return num_destinations_; }
  const Placement& placement() const { return placement_; }

  LinkLabel label(int source, int destination) const;

  // All desired pairs, sorted by (source, destination).
  std::vector<Message> messages() const;
  std::vector<int> desired_destinations(int source) const;  // ascending
  std::vector<int> desired_sources(int destination) const;  // ascending

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  int num_sources_ = 0;
  int num_destinations_ = 0;
  Placement placement_;
  std::vector<LinkLabel> labels_;
};

// Per-destination intervals over source indices.
struct DestinationProfile {
  int desired_lo = 0, desired_hi = 0;
  int heard_lo = 0, heard_hi = 0;
};

// Per-source intervals over destination indices.  "Reaching" collects the
// destinations that hear this source at all (desired or interfering).
struct SourceProfile {
  int desired_lo = 0, desired_hi = 0;
  int reaching_lo = 0, reaching_hi = 0;
};

struct IntervalProfile {
  std::vector<DestinationProfile> destinations;  // [j-1]
  std::vector<SourceProfile> sources;            // [i-1]
};

// --- text format ------------------------------------------------------

// Parses the TIM v1 text format.  Throws ParseError on malformed text and
// StructureError when the parsed network breaks PLACE-ORDER or coverage.
Topology parse_topology(const std::string& text);

// Same parse without the structural gate; used to report structural
// violations as data instead of an exception.
Topology parse_topology_unvalidated(const std::string& text);

// Canonical TIM v1 text: fixed line order, desired before interfering,
// links sorted by (source, destination), single spaces, trailing newline.
std::string serialize_topology(const Topology& t);

// --- validation -------------------------------------------------------

// PLACE-ORDER / COVER-D / COVER-S violations, in scan order.
ValidationReport check_structure(const Topology& t);

// All eight convexity rules by direct triple quantification.  Scan order:
// rule (DC-a..SC-d), then the quantified node indices ascending.
ValidationReport validate_convexity(const Topology& t);

// Computes the anchored interval form of a convex network directly (an
// independent route from the rule scan).  Throws NotConvex if any node's
// desired/heard/reaching set is not a contiguous interval anchored at the
// node's position; the error carries the first rule violation.
IntervalProfile interval_profile(const Topology& t);

// --- structural operations --------------------------------------------

// Swaps the two kinds: sources become destinations and vice versa, link
// labels carry over per pair, positions are unchanged.  An involution.
Topology reciprocal(const Topology& t);

// Left-right reflection of the line.  Convexity-preserving; the right-to-
// left greedy runs as the left-to-right greedy of the mirror.
Topology mirror(const Topology& t);

// Removes the first `leading_sources` sources and `leading_destinations`
// destinations, reindexes survivors, keeps their relative placement.
// Throws EmptyResult if either kind would vanish and CoverageLost if a
// surviving node loses its last desired link.
Topology eliminate(const Topology& t, int leading_sources, int leading_destinations);

}  // namespace tim

#endif  // TIM_TOPOLOGY_HPP
