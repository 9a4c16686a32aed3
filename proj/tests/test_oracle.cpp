#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "tim/errors.hpp"
#include "tim/generator.hpp"
#include "tim/greedy.hpp"
#include "tim/oracle.hpp"

using namespace tim;

namespace {

// Independent route to the exact optimum: test every message subset
// directly against the orthogonality definition.  Returns size and the
// lexicographically least optimal subset.
MaxOrthogonalResult subset_oracle(const Topology& t) {
  const std::vector<Message> msgs = t.messages();
  const int n = static_cast<int>(msgs.size());
  REQUIRE(n <= 20);
  MaxOrthogonalResult best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Message> subset;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(msgs[i]);
    if (!is_orthogonal(t, subset).orthogonal) continue;
    const int size = static_cast<int>(subset.size());
    if (size > best.size || (size == best.size && subset < best.witness))
      best = {size, subset};
  }
  return best;
}

}  // namespace

TEST_CASE("exact search equals the subset oracle on every fixture") {
  for (const char* name : {"unit1", "chain3", "fig2like", "fig3like", "fourcell"}) {
    const Topology t = fixture(name);
    const MaxOrthogonalResult expected = subset_oracle(t);
    const MaxOrthogonalResult got = max_orthogonal(t);
    CHECK(got.size == expected.size);
    CHECK(got.witness == expected.witness);
    CHECK(is_orthogonal(t, got.witness).orthogonal);
  }
}

TEST_CASE("exact search pins") {
  CHECK(max_orthogonal(fixture("unit1")).size == 1);
  CHECK(max_orthogonal(fixture("chain3")).witness == std::vector<Message>{{1, 1}, {3, 3}});

  const MaxOrthogonalResult fourcell = max_orthogonal(fixture("fourcell"));
  CHECK(fourcell.size == 2);
  CHECK(fourcell.witness == std::vector<Message>{{1, 1}, {3, 5}});

  CHECK(max_orthogonal(fixture("fig2like")).size == 3);
  CHECK(max_orthogonal(fixture("fig3like")).size == 5);
}

TEST_CASE("exact search equals the subset oracle on every convex network with T, K <= 2") {
  enumerate_topologies(2, 2, [&](const Topology& t) {
    const MaxOrthogonalResult expected = subset_oracle(t);
    const MaxOrthogonalResult got = max_orthogonal(t);
    CHECK(got.size == expected.size);
    CHECK(got.witness == expected.witness);
  });
}

TEST_CASE("exact search respects its budget") {
  CHECK_THROWS_AS(max_orthogonal(fixture("chain3"), 2), SizeLimit);
  CHECK_NOTHROW(max_orthogonal(fixture("chain3"), 3));
}

TEST_CASE("demand graph: nodes, edges, and lookups") {
  const Topology t = fixture("chain3");
  const DemandGraph g = build_demand_graph(t, {{1, 1}, {3, 3}});
  CHECK(g.nodes == std::vector<NodeRef>{destination_ref(1), destination_ref(3), source_ref(1),
                                        source_ref(3)});
  CHECK(g.node_id(destination_ref(3)) == 1);
  CHECK(g.node_id(source_ref(1)) == 2);
  CHECK(g.node_id(source_ref(2)) == -1);

  // D1 cannot hear S3 and D3 cannot hear S1: two weak back edges complete
  // the 4-cycle with the two desired edges.
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0] == DemandGraph::Edge{0, 3, false});  // D1 -> S3
  CHECK(g.edges[1] == DemandGraph::Edge{1, 2, false});  // D3 -> S1
  CHECK(g.edges[2] == DemandGraph::Edge{2, 0, true});   // S1 -> D1
  CHECK(g.edges[3] == DemandGraph::Edge{3, 1, true});   // S3 -> D3

  CHECK_THROWS_AS(build_demand_graph(t, {{1, 2}}), UnknownMessage);
}

TEST_CASE("demand graph: adjacent picks share no weak edges") {
  const DemandGraph g = build_demand_graph(fixture("chain3"), {{1, 1}, {2, 2}});
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].desired);
  CHECK(g.edges[1].desired);
  CHECK(!find_cycle(g).has_value());
  const auto order = topological_order(g);
  REQUIRE(order.has_value());
  CHECK(*order == std::vector<NodeRef>{source_ref(1), destination_ref(1), source_ref(2),
                                       destination_ref(2)});
}

TEST_CASE("demand graph: a singleton has exactly one edge") {
  const DemandGraph g = build_demand_graph(fixture("unit1"), {{1, 1}});
  CHECK(g.nodes.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].desired);
}

TEST_CASE("cycle detection is deterministic") {
  const Topology t = fixture("chain3");
  const auto cycle = find_cycle(build_demand_graph(t, {{1, 1}, {3, 3}}));
  REQUIRE(cycle.has_value());
  CHECK(*cycle == std::vector<NodeRef>{destination_ref(1), source_ref(3), destination_ref(3),
                                       source_ref(1)});
  CHECK(!topological_order(build_demand_graph(t, {{1, 1}, {3, 3}})).has_value());

  const DemandGraph empty;
  CHECK(!find_cycle(empty).has_value());
  CHECK(topological_order(empty) == std::vector<NodeRef>{});
}

TEST_CASE("wrap pattern: chain3 pin") {
  const Topology t = fixture("chain3");
  const std::vector<NodeRef> cycle = {destination_ref(1), source_ref(3), destination_ref(3),
                                      source_ref(1)};
  CHECK(find_wrap_pattern(t, cycle) == WrapPattern{1, 3, 3, 1, 1});
  // Rotations of the same cycle give the same pattern.
  const std::vector<NodeRef> rotated = {destination_ref(3), source_ref(1), destination_ref(1),
                                        source_ref(3)};
  CHECK(find_wrap_pattern(t, rotated) == WrapPattern{1, 3, 3, 1, 1});
}

TEST_CASE("wrap pattern: malformed cycles are rejected") {
  const Topology t = fixture("chain3");
  CHECK_THROWS_AS(find_wrap_pattern(t, {destination_ref(1), source_ref(1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      find_wrap_pattern(t, {destination_ref(1), source_ref(3), destination_ref(3)}),
      std::invalid_argument);
  CHECK_THROWS_AS(find_wrap_pattern(t, {destination_ref(1), destination_ref(3), source_ref(1),
                                        source_ref(3)}),
                  std::invalid_argument);
  // Alternating shape but D1 hears S2: not a demand-graph cycle.
  CHECK_THROWS_AS(find_wrap_pattern(t, {destination_ref(1), source_ref(2), destination_ref(2),
                                        source_ref(1)}),
                  std::invalid_argument);
}

TEST_CASE("wrap pattern: non-convex input breaks an ordering") {
  // D1 -/-> S4 -> D7 -/-> S1 -> D1 is a demand-graph cycle of fourcell,
  // but S4 sits left of D1, so the U-turn orderings cannot all hold.
  const Topology t = fixture("fourcell");
  const std::vector<NodeRef> cycle = {destination_ref(1), source_ref(4), destination_ref(7),
                                      source_ref(1)};
  CHECK_THROWS_AS(find_wrap_pattern(t, cycle), InvariantViolation);
}

TEST_CASE("wrap pattern succeeds on every cyclic subset of the convex fixtures") {
  for (const char* name : {"chain3", "fig2like", "fig3like"}) {
    const Topology t = fixture(name);
    const std::vector<Message> msgs = t.messages();
    const int n = static_cast<int>(msgs.size());
    REQUIRE(n <= 17);
    int cyclic = 0;
    for (std::uint64_t mask = 3; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Message> subset;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) subset.push_back(msgs[i]);
      if (subset.size() < 2) continue;
      const auto cycle = find_cycle(build_demand_graph(t, subset));
      if (!cycle) continue;
      ++cyclic;
      const WrapPattern p = find_wrap_pattern(t, *cycle);
      const Placement& pl = t.placement();
      CHECK(pl.before(destination_ref(p.j1), destination_ref(p.j3)));
      CHECK(pl.before(destination_ref(p.j5), destination_ref(p.j3)));
      CHECK(pl.before(source_ref(p.j4), destination_ref(p.j3)));
      CHECK(pl.before(destination_ref(p.j1), source_ref(p.j2)));
    }
    if (std::string(name) != "chain3") CHECK(cyclic > 100);
  }
}

TEST_CASE("greedy partition pins") {
  const Topology chain3 = fixture("chain3");
  const Schedule s = greedy_schedule(chain3, Direction::LeftToRight, Mode::Safe);
  const auto blocks = greedy_partition(chain3, s);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<Message>{{1, 1}, {2, 2}});
  CHECK(blocks[1] == std::vector<Message>{{3, 3}});

  const auto fig2_blocks =
      greedy_partition(fixture("fig2like"),
                       greedy_schedule(fixture("fig2like"), Direction::LeftToRight, Mode::Safe));
  REQUIRE(fig2_blocks.size() == 3);
  CHECK(fig2_blocks[0].size() == 3);
  CHECK(fig2_blocks[1].size() == 6);
  CHECK(fig2_blocks[2].size() == 3);

  const auto fig3_blocks =
      greedy_partition(fixture("fig3like"),
                       greedy_schedule(fixture("fig3like"), Direction::LeftToRight, Mode::Safe));
  REQUIRE(fig3_blocks.size() == 5);
  CHECK(fig3_blocks[0].size() == 4);
  CHECK(fig3_blocks[1].size() == 4);
  CHECK(fig3_blocks[2].size() == 3);
  CHECK(fig3_blocks[3].size() == 5);
  CHECK(fig3_blocks[4].size() == 1);
}

TEST_CASE("greedy partition rejects foreign schedules") {
  const Topology chain3 = fixture("chain3");
  const Schedule rtl = greedy_schedule(chain3, Direction::RightToLeft, Mode::Safe);
  CHECK_THROWS_AS(greedy_partition(chain3, rtl), ScheduleMismatch);

  Schedule tampered = greedy_schedule(chain3, Direction::LeftToRight, Mode::Safe);
  tampered.picks.pop_back();
  CHECK_THROWS_AS(greedy_partition(chain3, tampered), ScheduleMismatch);
}

TEST_CASE("certificates: pins and structural soundness") {
  const Certificate unit = certify(fixture("unit1"));
  CHECK(unit.sum_dof == 1);
  REQUIRE(unit.blocks.size() == 1);
  CHECK(unit.blocks[0] == std::vector<Message>{{1, 1}});
  CHECK(unit.topo_orders[0] == std::vector<NodeRef>{source_ref(1), destination_ref(1)});

  const Certificate fig2 = certify(fixture("fig2like"));
  CHECK(fig2.sum_dof == 3);
  CHECK(fig2.topo_orders[1] ==
        std::vector<NodeRef>{source_ref(7), destination_ref(8), destination_ref(9), source_ref(5),
                             destination_ref(5), source_ref(6), destination_ref(6),
                             destination_ref(7), source_ref(4), destination_ref(4)});
}

TEST_CASE("certificates hold on every convex network with T <= 2, K <= 3") {
  enumerate_topologies(2, 3, [&](const Topology& t) {
    const Certificate cert = certify(t);
    CHECK(cert.sum_dof == static_cast<int>(cert.schedule.picks.size()));
    REQUIRE(cert.blocks.size() == cert.schedule.picks.size());
    REQUIRE(cert.topo_orders.size() == cert.blocks.size());

    // Blocks are disjoint and cover every message exactly once.
    std::vector<Message> covered;
    for (const auto& block : cert.blocks) covered.insert(covered.end(), block.begin(), block.end());
    std::sort(covered.begin(), covered.end());
    CHECK(covered == t.messages());

    // Every topological order respects its block's demand graph.
    for (size_t k = 0; k < cert.blocks.size(); ++k) {
      const DemandGraph g = build_demand_graph(t, cert.blocks[k]);
      const std::vector<NodeRef>& order = cert.topo_orders[k];
      REQUIRE(order.size() == g.nodes.size());
      std::vector<int> rank(g.nodes.size(), -1);
      for (size_t pos = 0; pos < order.size(); ++pos) {
        const int id = g.node_id(order[pos]);
        REQUIRE(id >= 0);
        CHECK(rank[id] == -1);
        rank[id] = static_cast<int>(pos);
      }
      for (const DemandGraph::Edge& e : g.edges) CHECK(rank[e.from] < rank[e.to]);
    }
  });
}
