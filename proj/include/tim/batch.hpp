#ifndef TIM_BATCH_HPP
#define TIM_BATCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tim/topology.hpp"

namespace tim {

struct BatchOptions {
  std::uint64_t seed = 0;  // drives subset sampling and payload draws
  // Demand-graph cycle / wrap-pattern scan: exhaustive over all message
  // subsets up to this size, sampled above it.
  int wrap_exhaustive_max_messages = 12;
  int wrap_sample_count = 200;
  // XOR codec: always this many random payload vectors, plus exhaustive
  // one-bit payloads when the schedule has at most onebit_max_picks picks.
  int payload_draws = 100;
  int onebit_max_picks = 6;
  int max_orthogonal_budget = 64;
};

struct NamedInstance {
  std::string name;
  std::optional<Topology> topology;
  std::string load_error;  // set when the file parsed but failed structurally
};

struct BatchReport {
  int instances_run = 0;
  int validation_failures = 0;  // structural or convexity failures (skipped)
  // Invariant counters; every one is zero on a conforming implementation.
  int triple_equality_failures = 0;
  int direction_equality_failures = 0;
  int duality_failures = 0;
  int mode_equivalence_failures = 0;
  int partition_acyclicity_failures = 0;
  int wrap_pattern_failures = 0;
  int codec_failures = 0;
  int recursion_failures = 0;
  double elapsed_seconds = 0.0;  // never rendered; reports stay byte-stable

  struct FailureDump {
    std::string check;
    std::string instance;
    std::string detail;
    std::string tim;  // canonical serialization for replay
  };
  std::vector<FailureDump> failures;

  // True when every counter except validation_failures is zero.
  bool invariants_ok() const;
};

// Runs the full invariant suite over the given instances: greedy size ==
// exact maximum == certified block count, left/right direction equality,
// reciprocal duality, safe/literal mode equivalence, per-block acyclicity,
// wrap-pattern extraction on every cyclic sampled subset, XOR codec
// round-trips, and the eliminate-then-rerun recursion property.
// Instances that fail to load or fail validation are counted and skipped.
BatchReport batch_verify(const std::vector<NamedInstance>& instances,
                         const BatchOptions& options = {});

}  // namespace tim

#endif  // TIM_BATCH_HPP
