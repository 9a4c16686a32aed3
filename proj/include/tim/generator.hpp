#ifndef TIM_GENERATOR_HPP
#define TIM_GENERATOR_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tim/topology.hpp"

namespace tim {

struct GeneratorParams {
  int min_sources = 1;
  int max_sources = 6;
  int min_destinations = 1;
  int max_destinations = 6;
  std::uint64_t seed = 0;
  // Expected number of extra heard-but-undesired sources per side of each
  // destination's desired interval (geometric tail).
  double interference_extension = 1.0;
  int max_attempts = 5000;
};

// Named reference networks: "unit1", "chain3", "fig2like", "fig3like",
// "fourcell".  Throws UnknownFixture for anything else.
Topology fixture(const std::string& name);
const std::vector<std::string>& fixture_names();

// Rejection sampler for convex networks.  Draws sizes and an interleaving,
// samples an anchored desired interval and a heard extension per
// destination (destination convexity holds by construction), then rejects
// any draw that misses source coverage or source convexity.  Deterministic
// per seed: identical params give identical instance sequences.
class RandomTopologyGenerator {
 public:
  explicit RandomTopologyGenerator(const GeneratorParams& params);

  // Next accepted instance; throws GenerationExhausted (with acceptance
  // stats in the message) after params.max_attempts consecutive rejections.
  Topology next();

  struct Stats {
    std::int64_t attempts = 0;
    std::int64_t accepted = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  GeneratorParams params_;
  std::mt19937_64 rng_;
  Stats stats_;
};

// First draw of a fresh generator with these params.
Topology random_convex_topology(const GeneratorParams& params);

// Number of raw candidates (interleavings x label matrices) an exhaustive
// enumeration up to the given sizes has to scan.
std::int64_t enumeration_cost(int max_sources, int max_destinations);

// Yields every structurally valid convex topology with T <= max_sources
// and K <= max_destinations exactly once, in deterministic order: sizes
// (T, K) ascending, interleavings in pattern order (all-sources-first
// first), label matrices lexicographic (source-major; Weak < Desired <
// Interfering).  Throws BudgetExceeded up front when enumeration_cost
// exceeds `budget`.
void enumerate_topologies(int max_sources, int max_destinations,
                          const std::function<void(const Topology&)>& yield,
                          std::int64_t budget = 10'000'000);

std::vector<Topology> enumerate_topologies(int max_sources, int max_destinations,
                                           std::int64_t budget = 10'000'000);

}  // namespace tim

#endif  // TIM_GENERATOR_HPP
