#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "tim/errors.hpp"
#include "tim/generator.hpp"
#include "tim/topology.hpp"

using namespace tim;

namespace {

std::string fixture_file_text(const std::string& name) {
  std::ifstream in(std::string(TIM_FIXTURES_DIR) + "/" + name + ".tim", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("fixture roster") {
  CHECK(fixture_names() ==
        std::vector<std::string>{"unit1", "chain3", "fig2like", "fig3like", "fourcell"});
  CHECK_THROWS_AS(fixture("nope"), UnknownFixture);
  CHECK_THROWS_AS(fixture("Unit1"), UnknownFixture);
}

TEST_CASE("fixtures match their shipped files byte for byte") {
  for (const std::string& name : fixture_names())
    CHECK(serialize_topology(fixture(name)) == fixture_file_text(name));
}

TEST_CASE("fixture validity: four convex references and one counterexample") {
  for (const std::string& name : fixture_names()) {
    const Topology t = fixture(name);
    CHECK(check_structure(t).ok());
    CHECK(validate_convexity(t).ok() == (name != "fourcell"));
  }
  CHECK(fixture("fig2like").num_sources() == 9);
  CHECK(fixture("fig2like").num_destinations() == 10);
  CHECK(fixture("fig3like").messages().size() == 17);
  CHECK(fixture("fourcell").messages().size() == 8);
}

TEST_CASE("enumeration cost is exact and saturates") {
  CHECK(enumeration_cost(1, 1) == 6);  // 2 interleavings x 3 labelings
  CHECK(enumeration_cost(3, 3) == 409002);
  CHECK(enumeration_cost(10, 10) == std::numeric_limits<std::int64_t>::max());
}

TEST_CASE("enumeration of the two smallest networks") {
  const std::vector<Topology> all = enumerate_topologies(1, 1);
  REQUIRE(all.size() == 2);
  CHECK(serialize_topology(all[0]) ==
        "TIM v1\nsources 1\ndestinations 1\nplacement S1 D1\ndesired 1 1\n");
  CHECK(serialize_topology(all[1]) ==
        "TIM v1\nsources 1\ndestinations 1\nplacement D1 S1\ndesired 1 1\n");
}

TEST_CASE("enumeration: frozen counts, uniqueness, validity") {
  const std::vector<Topology> all = enumerate_topologies(2, 2);
  CHECK(all.size() == 50);
  std::set<std::string> seen;
  for (const Topology& t : all) {
    CHECK(check_structure(t).ok());
    CHECK(validate_convexity(t).ok());
    CHECK(seen.insert(serialize_topology(t)).second);  // no duplicates
  }
  // Determinism: a second run yields the identical sequence.
  const std::vector<Topology> again = enumerate_topologies(2, 2);
  CHECK(again == all);
}

TEST_CASE("enumeration finds the chain fixture") {
  bool found = false;
  const std::string chain3 = serialize_topology(fixture("chain3"));
  enumerate_topologies(3, 3, [&](const Topology& t) {
    if (serialize_topology(t) == chain3) found = true;
  });
  CHECK(found);
}

TEST_CASE("enumeration refuses oversized requests up front") {
  int yielded = 0;
  CHECK_THROWS_AS(
      enumerate_topologies(3, 3, [&](const Topology&) { ++yielded; }, 1000), BudgetExceeded);
  CHECK(yielded == 0);
  CHECK_THROWS_AS(enumerate_topologies(5, 5), BudgetExceeded);  // beyond the default budget
  CHECK_THROWS_AS(enumerate_topologies(0, 1), std::invalid_argument);
}

TEST_CASE("random generation is seed-deterministic") {
  GeneratorParams params;
  params.min_sources = 2;
  params.max_sources = 6;
  params.min_destinations = 2;
  params.max_destinations = 6;
  params.seed = 41;
  RandomTopologyGenerator a(params);
  RandomTopologyGenerator b(params);
  for (int k = 0; k < 20; ++k) CHECK(a.next() == b.next());
  CHECK(a.stats().attempts == b.stats().attempts);

  GeneratorParams reseeded = params;
  reseeded.seed = 42;
  RandomTopologyGenerator c(params);
  RandomTopologyGenerator d(reseeded);
  bool any_difference = false;
  for (int k = 0; k < 20; ++k)
    if (!(c.next() == d.next())) any_difference = true;
  CHECK(any_difference);

  CHECK(random_convex_topology(params) == RandomTopologyGenerator(params).next());
}

TEST_CASE("random instances are valid convex networks with in-range sizes") {
  GeneratorParams params;
  params.min_sources = 1;
  params.max_sources = 6;
  params.min_destinations = 1;
  params.max_destinations = 6;
  params.seed = 7;
  RandomTopologyGenerator gen(params);
  for (int k = 0; k < 200; ++k) {
    const Topology t = gen.next();
    CHECK(t.num_sources() >= 1);
    CHECK(t.num_sources() <= 6);
    CHECK(t.num_destinations() >= 1);
    CHECK(t.num_destinations() <= 6);
    CHECK(check_structure(t).ok());
    CHECK(validate_convexity(t).ok());
  }
  CHECK(gen.stats().accepted == 200);
  CHECK(gen.stats().attempts >= 200);
  // Rejection stays far below the exhaustion limit at these sizes.
  CHECK(gen.stats().attempts < 200 * 100);
}

TEST_CASE("generation exhaustion carries its statistics") {
  GeneratorParams params;
  params.min_sources = 4;
  params.max_sources = 10;
  params.min_destinations = 4;
  params.max_destinations = 12;
  params.seed = 0;
  params.max_attempts = 1;
  RandomTopologyGenerator gen(params);
  CHECK_THROWS_AS(gen.next(), GenerationExhausted);
  CHECK(gen.stats().attempts == 1);
  CHECK(gen.stats().accepted == 0);
}

TEST_CASE("generator parameter validation") {
  GeneratorParams params;
  params.min_sources = 3;
  params.max_sources = 2;
  CHECK_THROWS_AS(RandomTopologyGenerator{params}, std::invalid_argument);
  params.max_sources = 3;
  params.max_attempts = 0;
  CHECK_THROWS_AS(RandomTopologyGenerator{params}, std::invalid_argument);
  params.max_attempts = 1000;
  params.min_destinations = 0;
  CHECK_THROWS_AS(RandomTopologyGenerator{params}, std::invalid_argument);
}
