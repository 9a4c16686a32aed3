#include <cstdint>
#include <vector>

#include <doctest.h>

#include "tim/errors.hpp"
#include "tim/generator.hpp"
#include "tim/greedy.hpp"
#include "tim/index_coding.hpp"

using namespace tim;

namespace {

Schedule ltr_schedule(const Topology& t) {
  return greedy_schedule(t, Direction::LeftToRight, Mode::Safe);
}

}  // namespace

TEST_CASE("side information: chain3 pins") {
  const IndexCodingInstance inst = to_index_coding(fixture("chain3"));
  REQUIRE(inst.messages == std::vector<Message>{{1, 1}, {2, 2}, {3, 3}});
  REQUIRE(inst.side_information.size() == 3);
  CHECK(inst.side_information[0] == std::vector<int>{2});  // D1 cannot hear S3
  CHECK(inst.side_information[1] == std::vector<int>{});   // D2 hears everyone
  CHECK(inst.side_information[2] == std::vector<int>{0});  // D3 cannot hear S1
  CHECK(inst.receiver(0) == 1);
  CHECK(inst.receiver(2) == 3);
}

TEST_CASE("side information: each fourcell receiver misses two foreign cells") {
  const IndexCodingInstance inst = to_index_coding(fixture("fourcell"));
  REQUIRE(inst.messages.size() == 8);
  for (const std::vector<int>& known : inst.side_information) CHECK(known.size() == 4);
  // D1 hears S1 (desired) and S2 (interfering): it knows both messages of
  // S3 and S4.
  CHECK(inst.side_information[0] == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("clique verification pins") {
  const IndexCodingInstance inst = to_index_coding(fixture("chain3"));
  CHECK(verify_clique(inst, {{1, 1}, {3, 3}}).is_clique);
  CHECK(verify_clique(inst, {}).is_clique);
  CHECK(verify_clique(inst, {{2, 2}}).is_clique);

  const CliqueCheck bad = verify_clique(inst, {{1, 1}, {2, 2}});
  REQUIRE(!bad.is_clique);
  CHECK(bad.witness == std::pair<Message, Message>{{1, 1}, {2, 2}});

  CHECK_THROWS_AS(verify_clique(inst, {{1, 3}}), UnknownMessage);
}

TEST_CASE("cliques coincide with orthogonal sets on every small network") {
  enumerate_topologies(2, 3, [&](const Topology& t) {
    const IndexCodingInstance inst = to_index_coding(t);
    const std::vector<Message> msgs = t.messages();
    const int n = static_cast<int>(msgs.size());
    REQUIRE(n <= 6);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Message> subset;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) subset.push_back(msgs[i]);
      CHECK(verify_clique(inst, subset).is_clique == is_orthogonal(t, subset).orthogonal);
    }
  });
}

TEST_CASE("xor broadcast: chain3 worked example") {
  const Topology t = fixture("chain3");
  const IndexCodingInstance inst = to_index_coding(t);
  const DecodeReport report = simulate_xor_code(inst, ltr_schedule(t), {0xA5, 0x3C});
  CHECK(report.broadcast == 0x99);
  CHECK(report.sum_rate == 2);
  CHECK(report.all_ok);
  REQUIRE(report.entries.size() == 2);
  CHECK(report.entries[0].message == Message{1, 1});
  CHECK(report.entries[0].payload == 0xA5);
  CHECK(report.entries[0].decoded == 0xA5);
  CHECK(report.entries[1].payload == 0x3C);
  CHECK(report.entries[1].decoded == 0x3C);
}

TEST_CASE("xor broadcast: argument checks") {
  const Topology t = fixture("chain3");
  const IndexCodingInstance inst = to_index_coding(t);
  const Schedule s = ltr_schedule(t);
  CHECK_THROWS_AS(simulate_xor_code(inst, s, {0xA5}), std::invalid_argument);

  Schedule not_a_clique = s;
  not_a_clique.picks = {{1, 1}, {2, 2}};
  CHECK_THROWS_AS(simulate_xor_code(inst, not_a_clique, {1, 2}), NotAClique);
}

TEST_CASE("xor broadcast: exhaustive one-bit payloads on the largest fixture schedule") {
  const Topology t = fixture("fig3like");
  const IndexCodingInstance inst = to_index_coding(t);
  const Schedule s = ltr_schedule(t);
  REQUIRE(s.picks.size() == 5);
  for (size_t k = 0; k < s.picks.size(); ++k) {
    std::vector<std::uint64_t> payloads(s.picks.size(), 0);
    payloads[k] = 1;
    const DecodeReport report = simulate_xor_code(inst, s, payloads);
    CHECK(report.all_ok);
    CHECK(report.broadcast == 1);
  }
}

TEST_CASE("xor broadcast decodes the greedy schedule on every small network") {
  std::uint64_t x = 0x243F6A8885A308D3ULL;  // fixed pseudo-random payload stream
  auto next_payload = [&x]() {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return x;
  };
  enumerate_topologies(2, 3, [&](const Topology& t) {
    const IndexCodingInstance inst = to_index_coding(t);
    const Schedule s = ltr_schedule(t);
    std::vector<std::uint64_t> payloads(s.picks.size());
    for (std::uint64_t& p : payloads) p = next_payload();
    const DecodeReport report = simulate_xor_code(inst, s, payloads);
    CHECK(report.all_ok);
    CHECK(report.sum_rate == static_cast<int>(s.picks.size()));
  });
}
