#ifndef TIM_INDEX_CODING_HPP
#define TIM_INDEX_CODING_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tim/greedy.hpp"
#include "tim/topology.hpp"

namespace tim {

// Index coding view of a network: one message per desired pair, wanted by
// its destination; a receiver holds message m' as side information exactly
// when it cannot hear m's source at all.  Messages are numbered W1.. in
// (source, destination) order.
struct IndexCodingInstance {
  std::vector<Message> messages;                   // lex sorted; Wk = messages[k-1]
  std::vector<std::vector<int>> side_information;  // 0-based message ids, ascending

  int receiver(int message_id) const { return messages[message_id].destination; }
};

struct CliqueCheck {
  bool is_clique = true;
  // First ordered pair (m, m2) where m's receiver lacks m2 as side info.
  std::optional<std::pair<Message, Message>> witness;

  explicit operator bool() const { return is_clique; }
};

struct DecodeReport {
  struct Entry {
    Message message;
    std::uint64_t payload = 0;
    std::uint64_t decoded = 0;
    bool ok = false;
  };

  std::uint64_t broadcast = 0;
  std::vector<Entry> entries;
  int sum_rate = 0;  // messages delivered per broadcast symbol
  bool all_ok = true;
};

IndexCodingInstance to_index_coding(const Topology& t);

// True iff every scheduled receiver holds every other scheduled message as
// side information.  Equals is_orthogonal on the underlying topology for
// endpoint-distinct sets (a tested property).  Throws UnknownMessage for
// messages outside the instance.
CliqueCheck verify_clique(const IndexCodingInstance& ic, const std::vector<Message>& msgs);

// Broadcasts the XOR of all scheduled 64-bit payloads as one symbol and
// lets each receiver cancel its side information.  Requires a clique
// (throws NotAClique) and one payload per pick (std::invalid_argument).
DecodeReport simulate_xor_code(const IndexCodingInstance& ic, const Schedule& s,
                               const std::vector<std::uint64_t>& payloads);

}  // namespace tim

#endif  // TIM_INDEX_CODING_HPP
