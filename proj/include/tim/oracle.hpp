#ifndef TIM_ORACLE_HPP
#define TIM_ORACLE_HPP

#include <optional>
#include <vector>

#include "tim/greedy.hpp"
#include "tim/topology.hpp"

namespace tim {

// Directed demand graph of a message subset.  Nodes are the endpoints of
// the messages, destinations listed before sources (each kind ascending);
// a desired edge runs source -> destination for every message, and a weak
// edge runs destination -> source whenever that destination cannot hear
// that source at all.  Every directed cycle alternates the two edge kinds.
struct DemandGraph {
  struct Edge {
    int from = 0, to = 0;  // indices into nodes
    bool desired = false;  // desired S->D edge vs. weak D->S edge

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<NodeRef> nodes;            // canonical order (see above)
  std::vector<Edge> edges;               // sorted by (from, to)
  std::vector<std::vector<int>> out;     // adjacency, targets ascending

  int node_id(NodeRef n) const;  // -1 if absent
};

struct MaxOrthogonalResult {
  int size = 0;
  std::vector<Message> witness;  // lexicographically least optimal set
};

// The five message indices of a wrap pattern
//   D_j1 -/-> S_j2 -> D_j3 -/-> S_j4 -> D_j5
// with D_j1 < D_j3, D_j5 < D_j3, S_j4 < D_j3 and D_j1 < S_j2 on the line.
struct WrapPattern {
  int j1 = 0, j2 = 0, j3 = 0, j4 = 0, j5 = 0;

  friend bool operator==(const WrapPattern&, const WrapPattern&) = default;
};

// Per-instance optimality certificate: the greedy schedule, a partition of
// all messages into one block per pick, and an acyclicity witness
// (topological order of the demand graph) for every block.  Each block
// accounts for at most one unit of sum capacity, so the schedule size
// meets the matching upper bound exactly.
struct Certificate {
  Schedule schedule;
  std::vector<std::vector<Message>> blocks;
  std::vector<std::vector<NodeRef>> topo_orders;
  int sum_dof = 0;
};

// Exact maximum orthogonal set by branch and bound over the pairwise
// conflict graph, greedy incumbent as the initial bound, deterministic
// lexicographically least witness.  Throws SizeLimit when the topology has
// more than `budget` messages.  Works on any structurally valid network,
// convex or not.
MaxOrthogonalResult max_orthogonal(const Topology& t, int budget = 64);

DemandGraph build_demand_graph(const Topology& t, const std::vector<Message>& msgs);

// First directed cycle in depth-first order from the lowest node, as the
// node sequence n0 -> n1 -> ... -> nk -> n0.  nullopt when acyclic.
std::optional<std::vector<NodeRef>> find_cycle(const DemandGraph& g);

// Deterministic Kahn order (lowest eligible node first); nullopt on cycle.
std::optional<std::vector<NodeRef>> topological_order(const DemandGraph& g);

// Rotates the cycle to its left-most destination, walks destinations in
// cycle order, and takes the first U-turn (both destination neighbors left
// of the current one).  Verifies all four ordering relations and throws
// InvariantViolation if any fails (possible on non-convex networks).
WrapPattern find_wrap_pattern(const Topology& t, const std::vector<NodeRef>& cycle);

// Blocks of the certificate: block k collects every message whose source
// index lies in [i_k, i_{k+1}) or destination index in [j_k, j_{k+1}),
// earliest qualifying block wins, the last block takes the remainder.
// s must equal greedy_schedule(t, LeftToRight, Safe), else ScheduleMismatch.
std::vector<std::vector<Message>> greedy_partition(const Topology& t, const Schedule& s);

// Runs the left-to-right safe greedy, partitions, and proves every block's
// demand graph acyclic.  Throws InvariantViolation if a block is cyclic.
Certificate certify(const Topology& t);

}  // namespace tim

#endif  // TIM_ORACLE_HPP
