#include "tim/batch.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>
#include <string>

#include "tim/errors.hpp"
#include "tim/generator.hpp"
#include "tim/greedy.hpp"
#include "tim/index_coding.hpp"
#include "tim/oracle.hpp"

namespace tim {

bool BatchReport::invariants_ok() const {
  return triple_equality_failures == 0 && direction_equality_failures == 0 &&
         duality_failures == 0 && mode_equivalence_failures == 0 &&
         partition_acyclicity_failures == 0 && wrap_pattern_failures == 0 &&
         codec_failures == 0 && recursion_failures == 0;
}

namespace {

struct InstanceContext {
  const Topology& t;
  const std::string& name;
  BatchReport& report;

  void fail(int BatchReport::* counter, const std::string& check, const std::string& detail) {
    ++(report.*counter);
    report.failures.push_back({check, name, detail, serialize_topology(t)});
  }
};

// Demand-graph cycles of a message subset must always yield a wrap pattern
// on a convex network; extraction throws InvariantViolation otherwise.
void check_wrap_patterns(InstanceContext& ctx, std::mt19937_64& rng, const BatchOptions& options) {
  const std::vector<Message> msgs = ctx.t.messages();
  const int n = static_cast<int>(msgs.size());

  auto run_subset = [&](const std::vector<Message>& subset, const std::string& label) {
    try {
      const DemandGraph g = build_demand_graph(ctx.t, subset);
      if (auto cycle = find_cycle(g)) find_wrap_pattern(ctx.t, *cycle);
    } catch (const Error& e) {
      ctx.fail(&BatchReport::wrap_pattern_failures, "wrap_pattern", label + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      ctx.fail(&BatchReport::wrap_pattern_failures, "wrap_pattern", label + ": " + e.what());
    }
  };

  if (n <= options.wrap_exhaustive_max_messages) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<Message> subset;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) subset.push_back(msgs[i]);
      run_subset(subset, "subset mask " + std::to_string(mask));
    }
  } else {
    for (int draw = 0; draw < options.wrap_sample_count; ++draw) {
      std::vector<Message> subset;
      for (int i = 0; i < n; ++i)
        if (rng() >> 33 & 1) subset.push_back(msgs[i]);
      if (subset.size() < 2) continue;
      run_subset(subset, "sampled draw " + std::to_string(draw));
    }
  }
}

void check_codec(InstanceContext& ctx, const Schedule& ltr, std::mt19937_64& rng,
                 const BatchOptions& options) {
  try {
    const IndexCodingInstance inst = to_index_coding(ctx.t);
    const CliqueCheck clique = verify_clique(inst, ltr.picks);
    if (!clique) {
      ctx.fail(&BatchReport::codec_failures, "codec",
               "greedy schedule is not a clique: " + to_string(clique.witness->first) +
                   " cannot cancel " + to_string(clique.witness->second));
      return;
    }
    const size_t n = ltr.picks.size();
    auto run_payloads = [&](const std::vector<std::uint64_t>& payloads,
                            const std::string& label) {
      const DecodeReport d = simulate_xor_code(inst, ltr, payloads);
      if (!d.all_ok || d.sum_rate != static_cast<int>(n))
        ctx.fail(&BatchReport::codec_failures, "codec", label + ": decode failed");
    };
    for (int draw = 0; draw < options.payload_draws; ++draw) {
      std::vector<std::uint64_t> payloads(n);
      for (std::uint64_t& p : payloads) p = rng();
      run_payloads(payloads, "random payload draw " + std::to_string(draw));
    }
    if (static_cast<int>(n) <= options.onebit_max_picks)
      for (size_t k = 0; k < n; ++k) {
        std::vector<std::uint64_t> payloads(n, 0);
        payloads[k] = 1;
        run_payloads(payloads, "one-bit payload at pick " + std::to_string(k + 1));
      }
  } catch (const Error& e) {
    ctx.fail(&BatchReport::codec_failures, "codec", e.what());
  }
}

// Dropping everything left of the second pick and rerunning the greedy
// must reproduce the tail of the original schedule, shifted.
void check_recursion(InstanceContext& ctx, const Schedule& ltr) {
  if (ltr.picks.size() < 2) return;
  const int ds = ltr.picks[1].source - 1;
  const int dd = ltr.picks[1].destination - 1;
  try {
    const Topology rest = eliminate(ctx.t, ds, dd);
    const Schedule rerun = greedy_schedule(rest, Direction::LeftToRight, Mode::Safe);
    std::vector<Message> expected;
    for (size_t k = 1; k < ltr.picks.size(); ++k)
      expected.push_back({ltr.picks[k].source - ds, ltr.picks[k].destination - dd});
    if (rerun.picks != expected)
      ctx.fail(&BatchReport::recursion_failures, "recursion",
               "rerun after eliminating " + std::to_string(ds) + " sources and " +
                   std::to_string(dd) + " destinations diverged from the schedule tail");
  } catch (const Error& e) {
    ctx.fail(&BatchReport::recursion_failures, "recursion", e.what());
  }
}

}  // namespace

BatchReport batch_verify(const std::vector<NamedInstance>& instances,
                         const BatchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  BatchReport report;

  for (size_t index = 0; index < instances.size(); ++index) {
    const NamedInstance& inst = instances[index];
    ++report.instances_run;
    if (!inst.topology.has_value()) {
      ++report.validation_failures;
      continue;
    }
    const Topology& t = *inst.topology;
    if (!check_structure(t).ok() || !validate_convexity(t).ok()) {
      ++report.validation_failures;
      continue;
    }
    InstanceContext ctx{t, inst.name, report};
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + index + 1);

    // Greedy size == exact maximum == certified block count.
    Schedule ltr;
    try {
      ltr = greedy_schedule(t, Direction::LeftToRight, Mode::Safe);
    } catch (const Error& e) {
      ctx.fail(&BatchReport::triple_equality_failures, "triple_equality",
               std::string("greedy failed: ") + e.what());
      continue;
    }
    const int n = static_cast<int>(ltr.picks.size());
    try {
      const MaxOrthogonalResult exact = max_orthogonal(t, options.max_orthogonal_budget);
      if (exact.size != n)
        ctx.fail(&BatchReport::triple_equality_failures, "triple_equality",
                 "greedy " + std::to_string(n) + " != exact " + std::to_string(exact.size));
    } catch (const SizeLimit&) {
      // Oversized instance: the exact leg of the triple is skipped.
    }
    try {
      const Certificate cert = certify(t);
      if (static_cast<int>(cert.blocks.size()) != n || cert.sum_dof != n)
        ctx.fail(&BatchReport::triple_equality_failures, "triple_equality",
                 "greedy " + std::to_string(n) + " != certificate blocks " +
                     std::to_string(cert.blocks.size()));
    } catch (const InvariantViolation& e) {
      ctx.fail(&BatchReport::partition_acyclicity_failures, "partition_acyclicity", e.what());
    } catch (const Error& e) {
      ctx.fail(&BatchReport::partition_acyclicity_failures, "partition_acyclicity", e.what());
    }

    // Scan direction must not change the schedule size.
    try {
      const Schedule rtl = greedy_schedule(t, Direction::RightToLeft, Mode::Safe);
      if (static_cast<int>(rtl.picks.size()) != n)
        ctx.fail(&BatchReport::direction_equality_failures, "direction_equality",
                 "ltr " + std::to_string(n) + " != rtl " + std::to_string(rtl.picks.size()));
    } catch (const Error& e) {
      ctx.fail(&BatchReport::direction_equality_failures, "direction_equality", e.what());
    }

    // Swapping the roles of sources and destinations must not either.
    try {
      const Schedule dual = greedy_schedule(reciprocal(t), Direction::LeftToRight, Mode::Safe);
      if (static_cast<int>(dual.picks.size()) != n)
        ctx.fail(&BatchReport::duality_failures, "duality",
                 "primal " + std::to_string(n) + " != reciprocal " +
                     std::to_string(dual.picks.size()));
    } catch (const Error& e) {
      ctx.fail(&BatchReport::duality_failures, "duality", e.what());
    }

    // Literal and safe mode agree pick for pick on convex networks.
    try {
      for (Direction dir : {Direction::LeftToRight, Direction::RightToLeft}) {
        const Schedule safe = greedy_schedule(t, dir, Mode::Safe);
        const Schedule literal = greedy_schedule(t, dir, Mode::Literal);
        if (!(safe == literal)) {
          ctx.fail(&BatchReport::mode_equivalence_failures, "mode_equivalence",
                   dir == Direction::LeftToRight ? "ltr schedules differ" : "rtl schedules differ");
          break;
        }
      }
    } catch (const Error& e) {
      ctx.fail(&BatchReport::mode_equivalence_failures, "mode_equivalence", e.what());
    }

    check_wrap_patterns(ctx, rng, options);
    check_codec(ctx, ltr, rng, options);
    check_recursion(ctx, ltr);
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace tim
