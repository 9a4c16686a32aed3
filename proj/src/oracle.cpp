#include "tim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "tim/errors.hpp"

namespace tim {

namespace {

// Fixed-capacity bitset over dynamically many 64-bit words; large enough
// for any message budget the exact search accepts.
class Bits {
 public:
  explicit Bits(int capacity) : words_((capacity + 63) / 64, 0) {}

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  int lowest() const {  // -1 when empty
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i) * 64 + std::countr_zero(words_[i]);
    return -1;
  }
  Bits& operator&=(const Bits& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Largest clique size reachable within candidate set P, given `size`
// vertices already chosen.  Lowest-bit branching keeps the search
// deterministic; the popcount bound prunes against the incumbent.
void bb_expand(const std::vector<Bits>& adj, Bits P, int size, int& best) {
  if (size + P.count() <= best) return;
  int v = P.lowest();
  if (v < 0) {
    best = std::max(best, size);
    return;
  }
  Bits with = P;
  with &= adj[v];
  bb_expand(adj, std::move(with), size + 1, best);
  P.reset(v);
  bb_expand(adj, std::move(P), size, best);
}

int bb_max(const std::vector<Bits>& adj, const Bits& P, int base, int incumbent) {
  int best = incumbent;
  bb_expand(adj, P, base, best);
  return best;
}

}  // namespace

MaxOrthogonalResult max_orthogonal(const Topology& t, int budget) {
  const std::vector<Message> msgs = t.messages();
  const int n = static_cast<int>(msgs.size());
  if (n > budget)
    throw SizeLimit("exact search refused: " + std::to_string(n) + " messages exceed budget " +
                    std::to_string(budget));
  if (n == 0) return {};

  // Compatibility graph: orthogonal sets are exactly its cliques.
  auto compatible = [&](const Message& a, const Message& b) {
    return a.source != b.source && a.destination != b.destination &&
           t.label(a.source, b.destination) == LinkLabel::Weak &&
           t.label(b.source, a.destination) == LinkLabel::Weak;
  };
  std::vector<Bits> adj(n, Bits(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (compatible(msgs[a], msgs[b])) {
        adj[a].set(b);
        adj[b].set(a);
      }

  // Greedy incumbent: scan in message order, keep whatever stays compatible.
  int incumbent = 0;
  {
    Bits open(n);
    for (int i = 0; i < n; ++i) open.set(i);
    while (!open.empty()) {
      int v = open.lowest();
      ++incumbent;
      open &= adj[v];
    }
  }

  Bits all(n);
  for (int i = 0; i < n; ++i) all.set(i);
  const int size = bb_max(adj, all, 0, incumbent);

  // Lexicographically least witness: grow from the smallest message whose
  // inclusion still reaches the optimum, shrinking candidates as we go.
  MaxOrthogonalResult result;
  result.size = size;
  Bits candidates = all;
  int chosen = 0;
  for (int v = 0; v < n && chosen < size; ++v) {
    if (!candidates.test(v)) continue;
    Bits rest = candidates;
    rest &= adj[v];
    for (int u = 0; u <= v; ++u) rest.reset(u);
    if (chosen + 1 + bb_max(adj, rest, 0, 0) == size) {
      result.witness.push_back(msgs[v]);
      ++chosen;
      candidates = rest;
    }
  }
  if (chosen != size) throw InvariantViolation("witness extraction lost the optimum");
  return result;
}

// --- demand graphs -------------------------------------------------------

int DemandGraph::node_id(NodeRef n) const {
  // nodes holds destinations first, then sources, each ascending
  auto it = std::lower_bound(nodes.begin(), nodes.end(), n, [](NodeRef a, NodeRef b) {
    if (a.kind != b.kind) return a.kind == NodeKind::Destination;
    return a.index < b.index;
  });
  if (it == nodes.end() || !(*it == n)) return -1;
  return static_cast<int>(it - nodes.begin());
}

DemandGraph build_demand_graph(const Topology& t, const std::vector<Message>& msgs) {
  std::vector<int> sources, dests;
  for (const Message& m : msgs) {
    if (m.source < 1 || m.source > t.num_sources() || m.destination < 1 ||
        m.destination > t.num_destinations() || t.label(m.source, m.destination) != LinkLabel::Desired)
      throw UnknownMessage(m, to_string(m) + " is not a desired pair of this topology");
    sources.push_back(m.source);
    dests.push_back(m.destination);
  }
  auto dedup = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(sources);
  dedup(dests);

  DemandGraph g;
  for (int d : dests) g.nodes.push_back(destination_ref(d));
  for (int s : sources) g.nodes.push_back(source_ref(s));

  for (const Message& m : msgs)
    g.edges.push_back({g.node_id(source_ref(m.source)), g.node_id(destination_ref(m.destination)),
                       true});
  for (int d : dests)
    for (int s : sources)
      if (t.label(s, d) == LinkLabel::Weak)
        g.edges.push_back({g.node_id(destination_ref(d)), g.node_id(source_ref(s)), false});

  std::sort(g.edges.begin(), g.edges.end(), [](const DemandGraph::Edge& a, const DemandGraph::Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [](const DemandGraph::Edge& a, const DemandGraph::Edge& b) {
                              return a.from == b.from && a.to == b.to;
                            }),
                g.edges.end());
  g.out.assign(g.nodes.size(), {});
  for (const DemandGraph::Edge& e : g.edges) g.out[e.from].push_back(e.to);
  return g;
}

namespace {

// Depth-first walk; returns true once a cycle is copied into `cycle`.
bool dfs_cycle(const DemandGraph& g, int v, std::vector<int>& state, std::vector<int>& stack,
               std::vector<int>& cycle) {
  state[v] = 1;
  stack.push_back(v);
  for (int w : g.out[v]) {
    if (state[w] == 1) {
      auto it = std::find(stack.begin(), stack.end(), w);
      cycle.assign(it, stack.end());
      return true;
    }
    if (state[w] == 0 && dfs_cycle(g, w, state, stack, cycle)) return true;
  }
  stack.pop_back();
  state[v] = 2;
  return false;
}

}  // namespace

std::optional<std::vector<NodeRef>> find_cycle(const DemandGraph& g) {
  std::vector<int> state(g.nodes.size(), 0), stack, cycle;
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
    if (state[v] == 0 && dfs_cycle(g, v, state, stack, cycle)) {
      std::vector<NodeRef> out;
      for (int id : cycle) out.push_back(g.nodes[id]);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<NodeRef>> topological_order(const DemandGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> indegree(n, 0);
  for (const DemandGraph::Edge& e : g.edges) ++indegree[e.to];
  std::vector<NodeRef> order;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && indegree[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) return std::nullopt;  // every remaining node sits on a cycle
    done[pick] = true;
    order.push_back(g.nodes[pick]);
    for (int w : g.out[pick]) --indegree[w];
  }
  return order;
}

WrapPattern find_wrap_pattern(const Topology& t, const std::vector<NodeRef>& cycle) {
  const size_t len = cycle.size();
  if (len < 4 || len % 2 != 0)
    throw std::invalid_argument("wrap pattern needs an alternating cycle of length >= 4");
  size_t first_dest = 0;
  while (first_dest < len && cycle[first_dest].kind != NodeKind::Destination) ++first_dest;
  if (first_dest == len || first_dest > 1)
    throw std::invalid_argument("cycle does not alternate destinations and sources");

  // Split into destination/source sequences: dest[i] -> src[i] -> dest[i+1].
  std::vector<int> dest, src;
  for (size_t i = 0; i < len; ++i) {
    const NodeRef& n = cycle[(first_dest + i) % len];
    if (i % 2 == 0) {
      if (n.kind != NodeKind::Destination)
        throw std::invalid_argument("cycle does not alternate destinations and sources");
      dest.push_back(n.index);
    } else {
      if (n.kind != NodeKind::Source)
        throw std::invalid_argument("cycle does not alternate destinations and sources");
      src.push_back(n.index);
    }
  }
  const int m = static_cast<int>(dest.size());
  for (int i = 0; i < m; ++i) {
    if (t.label(src[i], dest[i]) != LinkLabel::Weak)
      throw std::invalid_argument("cycle edge D" + std::to_string(dest[i]) + "->S" +
                                  std::to_string(src[i]) + " is not a weak pair");
    if (t.label(src[i], dest[(i + 1) % m]) != LinkLabel::Desired)
      throw std::invalid_argument("cycle edge S" + std::to_string(src[i]) + "->D" +
                                  std::to_string(dest[(i + 1) % m]) + " is not a desired pair");
  }

  const Placement& pl = t.placement();
  auto dpos = [&](int j) { return pl.position(destination_ref(j)); };
  auto spos = [&](int i) { return pl.position(source_ref(i)); };

  // Rotate so the walk starts at the left-most destination.
  int start = 0;
  for (int i = 1; i < m; ++i)
    if (dpos(dest[i]) < dpos(dest[start])) start = i;
  std::rotate(dest.begin(), dest.begin() + start, dest.end());
  std::rotate(src.begin(), src.begin() + start, src.end());

  // First U-turn: a destination with both cycle neighbors to its left.
  int turn = -1;
  for (int q = 1; q < m && turn < 0; ++q)
    if (dpos(dest[q - 1]) < dpos(dest[q]) && dpos(dest[(q + 1) % m]) < dpos(dest[q])) turn = q;
  if (turn < 0) throw InvariantViolation("cycle has no U-turn destination");

  WrapPattern p;
  p.j1 = dest[turn - 1];
  p.j2 = src[turn - 1];
  p.j3 = dest[turn];
  p.j4 = src[turn];
  p.j5 = dest[(turn + 1) % m];

  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation("wrap ordering failed: " + what);
  };
  require(dpos(p.j1) < dpos(p.j3), "D" + std::to_string(p.j1) + " < D" + std::to_string(p.j3));
  require(dpos(p.j5) < dpos(p.j3), "D" + std::to_string(p.j5) + " < D" + std::to_string(p.j3));
  require(spos(p.j4) < dpos(p.j3), "S" + std::to_string(p.j4) + " < D" + std::to_string(p.j3));
  require(dpos(p.j1) < spos(p.j2), "D" + std::to_string(p.j1) + " < S" + std::to_string(p.j2));
  return p;
}

// --- certificates --------------------------------------------------------

std::vector<std::vector<Message>> greedy_partition(const Topology& t, const Schedule& s) {
  Schedule expected = greedy_schedule(t, Direction::LeftToRight, Mode::Safe);
  if (!(s == expected))
    throw ScheduleMismatch("partition requires the left-to-right safe greedy schedule");

  const int n = static_cast<int>(s.picks.size());
  std::vector<std::vector<Message>> blocks(n);
  for (const Message& m : t.messages()) {
    int block = n - 1;
    for (int k = 0; k + 1 < n; ++k) {
      bool source_in = s.picks[k].source <= m.source && m.source < s.picks[k + 1].source;
      bool dest_in = s.picks[k].destination <= m.destination &&
                     m.destination < s.picks[k + 1].destination;
      if (source_in || dest_in) {
        block = k;
        break;
      }
    }
    blocks[block].push_back(m);
  }
  return blocks;
}

Certificate certify(const Topology& t) {
  Certificate cert;
  cert.schedule = greedy_schedule(t, Direction::LeftToRight, Mode::Safe);
  cert.blocks = greedy_partition(t, cert.schedule);
  for (size_t k = 0; k < cert.blocks.size(); ++k) {
    DemandGraph g = build_demand_graph(t, cert.blocks[k]);
    std::optional<std::vector<NodeRef>> order = topological_order(g);
    if (!order)
      throw InvariantViolation("certification failed: block " + std::to_string(k + 1) +
                               " has a cyclic demand graph");
    cert.topo_orders.push_back(std::move(*order));
  }
  cert.sum_dof = static_cast<int>(cert.schedule.picks.size());
  return cert;
}

}  // namespace tim
