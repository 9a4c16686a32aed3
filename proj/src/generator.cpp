#include "tim/generator.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "tim/errors.hpp"

namespace tim {

namespace {

// Fixtures are stored as their canonical serialization: the parsed value
// round-trips to these exact bytes, and the shipped .tim files match them.

const char* const kUnit1 =
    "TIM v1\n"
    "sources 1\n"
    "destinations 1\n"
    "placement S1 D1\n"
    "desired 1 1\n";

const char* const kChain3 =
    "TIM v1\n"
    "sources 3\n"
    "destinations 3\n"
    "placement S1 D1 S2 D2 S3 D3\n"
    "desired 1 1\n"
    "desired 2 2\n"
    "desired 3 3\n"
    "interfering 1 2\n"
    "interfering 2 1\n"
    "interfering 2 3\n"
    "interfering 3 2\n";

// Nine sources, ten destinations; left-to-right greedy picks
// (1,1),(4,4),(8,8), right-to-left picks (9,10),(7,8),(3,3).
const char* const kFig2Like =
    "TIM v1\n"
    "sources 9\n"
    "destinations 10\n"
    "placement S1 D1 S2 D2 S3 D3 S4 D4 S5 D5 S6 D6 D7 S7 S8 D8 D9 S9 D10\n"
    "desired 1 1\n"
    "desired 2 2\n"
    "desired 3 3\n"
    "desired 4 4\n"
    "desired 5 5\n"
    "desired 6 6\n"
    "desired 6 7\n"
    "desired 7 8\n"
    "desired 7 9\n"
    "desired 8 8\n"
    "desired 8 9\n"
    "desired 9 10\n"
    "interfering 1 2\n"
    "interfering 1 3\n"
    "interfering 2 1\n"
    "interfering 2 3\n"
    "interfering 2 4\n"
    "interfering 3 1\n"
    "interfering 3 2\n"
    "interfering 3 4\n"
    "interfering 4 3\n"
    "interfering 4 5\n"
    "interfering 5 4\n"
    "interfering 5 6\n"
    "interfering 5 7\n"
    "interfering 5 8\n"
    "interfering 6 4\n"
    "interfering 6 5\n"
    "interfering 6 8\n"
    "interfering 7 4\n"
    "interfering 7 5\n"
    "interfering 7 6\n"
    "interfering 7 7\n"
    "interfering 8 10\n"
    "interfering 9 9\n";

// Eight sources, fourteen destinations; left-to-right greedy picks
// (1,1),(3,5),(5,7),(6,10),(8,14), right-to-left picks
// (8,14),(6,12),(5,7),(3,5),(1,2).
const char* const kFig3Like =
    "TIM v1\n"
    "sources 8\n"
    "destinations 14\n"
    "placement S1 D1 D2 S2 D3 D4 S3 D5 S4 D6 D7 S5 D8 S6 D9 D10 D11 D12 S7 D13 D14 S8\n"
    "desired 1 1\n"
    "desired 1 2\n"
    "desired 2 3\n"
    "desired 2 4\n"
    "desired 3 5\n"
    "desired 3 6\n"
    "desired 4 6\n"
    "desired 4 7\n"
    "desired 5 7\n"
    "desired 5 8\n"
    "desired 6 9\n"
    "desired 6 10\n"
    "desired 6 11\n"
    "desired 6 12\n"
    "desired 7 12\n"
    "desired 7 13\n"
    "desired 8 14\n"
    "interfering 1 3\n"
    "interfering 2 1\n"
    "interfering 2 2\n"
    "interfering 2 5\n"
    "interfering 3 3\n"
    "interfering 3 4\n"
    "interfering 4 5\n"
    "interfering 5 6\n"
    "interfering 5 9\n"
    "interfering 6 8\n"
    "interfering 6 13\n"
    "interfering 7 10\n"
    "interfering 7 11\n"
    "interfering 7 14\n"
    "interfering 8 13\n";

// Four base stations S1..S4, two users each (D1,D2 belong to S1, and so
// on); every user also hears exactly one foreign station.  Structurally
// valid but breaks one-dimensional convexity under this placement.
const char* const kFourcell =
    "TIM v1\n"
    "sources 4\n"
    "destinations 8\n"
    "placement S1 S2 S3 S4 D1 D2 D3 D4 D5 D6 D7 D8\n"
    "desired 1 1\n"
    "desired 1 2\n"
    "desired 2 3\n"
    "desired 2 4\n"
    "desired 3 5\n"
    "desired 3 6\n"
    "desired 4 7\n"
    "desired 4 8\n"
    "interfering 1 3\n"
    "interfering 1 6\n"
    "interfering 2 1\n"
    "interfering 2 8\n"
    "interfering 3 2\n"
    "interfering 3 7\n"
    "interfering 4 4\n"
    "interfering 4 5\n";

const std::map<std::string, const char*>& fixture_texts() {
  static const std::map<std::string, const char*> texts = {
      {"unit1", kUnit1},
      {"chain3", kChain3},
      {"fig2like", kFig2Like},
      {"fig3like", kFig3Like},
      {"fourcell", kFourcell},
  };
  return texts;
}

// --- deterministic draws -------------------------------------------------
// Hand-rolled reductions keep instance sequences identical across standard
// library implementations (std::uniform_int_distribution is not portable).

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

int draw_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Geometric count with the given mean, capped so a pathological run of
// draws cannot spin.
int draw_geometric(std::mt19937_64& rng, double mean, int cap) {
  if (mean <= 0.0 || cap <= 0) return 0;
  const double keep_going = mean / (1.0 + mean);
  int count = 0;
  while (count < cap) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u >= keep_going) break;
    ++count;
  }
  return count;
}

}  // namespace

Topology fixture(const std::string& name) {
  const auto& texts = fixture_texts();
  auto it = texts.find(name);
  if (it == texts.end()) throw UnknownFixture("no fixture named '" + name + "'");
  return parse_topology(it->second);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"unit1", "chain3", "fig2like", "fig3like",
                                                 "fourcell"};
  return names;
}

RandomTopologyGenerator::RandomTopologyGenerator(const GeneratorParams& params)
    : params_(params), rng_(params.seed) {
  if (params_.min_sources < 1 || params_.max_sources < params_.min_sources ||
      params_.min_destinations < 1 || params_.max_destinations < params_.min_destinations)
    throw std::invalid_argument("generator: empty size range");
  if (params_.max_attempts < 1) throw std::invalid_argument("generator: attempts must be >= 1");
}

Topology RandomTopologyGenerator::next() {
  for (int attempt = 0; attempt < params_.max_attempts; ++attempt) {
    ++stats_.attempts;
    const int T = draw_int(rng_, params_.min_sources, params_.max_sources);
    const int K = draw_int(rng_, params_.min_destinations, params_.max_destinations);

    // Uniform interleaving via Fisher-Yates over the kind pattern.
    std::vector<NodeKind> kinds(T, NodeKind::Source);
    kinds.insert(kinds.end(), K, NodeKind::Destination);
    for (int i = static_cast<int>(kinds.size()) - 1; i > 0; --i)
      std::swap(kinds[i], kinds[draw_int(rng_, 0, i)]);
    Placement placement = Placement::interleaving(kinds);

    // Destination convexity and COVER-D hold by construction: each
    // destination desires an anchored source interval (at most two sources
    // per side) and hears a geometric extension of it on both flanks.
    std::vector<LinkLabel> labels(static_cast<size_t>(T) * K, LinkLabel::Weak);
    for (int d = 1; d <= K; ++d) {
      const int m = placement.count_before(NodeKind::Source, destination_ref(d));
      int a = draw_int(rng_, 0, std::min(m, 2));
      int b = draw_int(rng_, 0, std::min(T - m, 2));
      if (a == 0 && b == 0) (m >= 1 ? a : b) = 1;
      const int lo = m - a + 1, hi = m + b;
      const int heard_lo = std::max(1, lo - draw_geometric(rng_, params_.interference_extension, T));
      const int heard_hi = std::min(T, hi + draw_geometric(rng_, params_.interference_extension, T));
      for (int s = heard_lo; s <= heard_hi; ++s)
        labels[static_cast<size_t>(s - 1) * K + (d - 1)] =
            (lo <= s && s <= hi) ? LinkLabel::Desired : LinkLabel::Interfering;
    }

    Topology t(T, K, std::move(placement), std::move(labels));
    // Source coverage and source convexity are enforced by rejection.
    if (check_structure(t).ok() && validate_convexity(t).ok()) {
      ++stats_.accepted;
      return t;
    }
  }
  throw GenerationExhausted("no accepted draw in " + std::to_string(params_.max_attempts) +
                            " attempts (lifetime: " + std::to_string(stats_.accepted) + "/" +
                            std::to_string(stats_.attempts) + " accepted)");
}

Topology random_convex_topology(const GeneratorParams& params) {
  RandomTopologyGenerator gen(params);
  return gen.next();
}

std::int64_t enumeration_cost(int max_sources, int max_destinations) {
  const std::int64_t cap = std::numeric_limits<std::int64_t>::max();
  auto saturating_add = [&](std::int64_t a, std::int64_t b) {
    std::int64_t r;
    return __builtin_add_overflow(a, b, &r) ? cap : r;
  };
  auto saturating_mul = [&](std::int64_t a, std::int64_t b) {
    std::int64_t r;
    return __builtin_mul_overflow(a, b, &r) ? cap : r;
  };
  std::int64_t total = 0;
  for (int T = 1; T <= max_sources; ++T)
    for (int K = 1; K <= max_destinations; ++K) {
      std::int64_t interleavings = 1;  // C(T+K, T)
      for (int i = 1; i <= T; ++i)
        interleavings = saturating_mul(interleavings, K + i) / i;
      std::int64_t matrices = 1;  // 3^(T*K)
      for (int i = 0; i < T * K; ++i) matrices = saturating_mul(matrices, 3);
      total = saturating_add(total, saturating_mul(interleavings, matrices));
    }
  return total;
}

void enumerate_topologies(int max_sources, int max_destinations,
                          const std::function<void(const Topology&)>& yield,
                          std::int64_t budget) {
  if (max_sources < 1 || max_destinations < 1)
    throw std::invalid_argument("enumerate: sizes must be >= 1");
  const std::int64_t cost = enumeration_cost(max_sources, max_destinations);
  if (cost > budget)
    throw BudgetExceeded("enumeration would scan " + std::to_string(cost) +
                         " candidates, budget is " + std::to_string(budget));

  for (int T = 1; T <= max_sources; ++T)
    for (int K = 1; K <= max_destinations; ++K) {
      // All-sources-first pattern is the lexicographic minimum; its
      // successors come from next_permutation.
      std::vector<int> pattern(T, 0);
      pattern.insert(pattern.end(), K, 1);
      do {
        std::vector<NodeKind> kinds;
        kinds.reserve(pattern.size());
        for (int p : pattern)
          kinds.push_back(p == 0 ? NodeKind::Source : NodeKind::Destination);
        const Placement placement = Placement::interleaving(kinds);

        // Source-major label odometer, most significant first:
        // Weak < Desired < Interfering.
        std::vector<LinkLabel> labels(static_cast<size_t>(T) * K, LinkLabel::Weak);
        for (;;) {
          Topology t(T, K, placement, labels);
          if (check_structure(t).ok() && validate_convexity(t).ok()) yield(t);
          int i = T * K - 1;
          while (i >= 0 && labels[i] == LinkLabel::Interfering) {
            labels[i] = LinkLabel::Weak;
            --i;
          }
          if (i < 0) break;
          labels[i] = labels[i] == LinkLabel::Weak ? LinkLabel::Desired : LinkLabel::Interfering;
        }
      } while (std::next_permutation(pattern.begin(), pattern.end()));
    }
}

std::vector<Topology> enumerate_topologies(int max_sources, int max_destinations,
                                           std::int64_t budget) {
  std::vector<Topology> out;
  enumerate_topologies(
      max_sources, max_destinations, [&](const Topology& t) { out.push_back(t); }, budget);
  return out;
}

}  // namespace tim
