#include "tim/index_coding.hpp"

#include <algorithm>
#include <stdexcept>

#include "tim/errors.hpp"

namespace tim {

IndexCodingInstance to_index_coding(const Topology& t) {
  IndexCodingInstance inst;
  inst.messages = t.messages();
  const int n = static_cast<int>(inst.messages.size());
  inst.side_information.resize(static_cast<size_t>(n));
  // Receiver a knows message b exactly when b's transmission does not reach
  // a's destination at meaningful strength.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (b != a &&
          t.label(inst.messages[b].source, inst.messages[a].destination) == LinkLabel::Weak)
        inst.side_information[a].push_back(b);
  return inst;
}

CliqueCheck verify_clique(const IndexCodingInstance& inst, const std::vector<Message>& picks) {
  CliqueCheck result;
  result.is_clique = true;
  std::vector<int> ids;
  ids.reserve(picks.size());
  for (const Message& m : picks) {
    auto it = std::lower_bound(inst.messages.begin(), inst.messages.end(), m);
    if (it == inst.messages.end() || *it != m)
      throw UnknownMessage(m, "not a message of this instance: " + to_string(m));
    ids.push_back(static_cast<int>(it - inst.messages.begin()));
  }
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = 0; b < ids.size(); ++b) {
      if (a == b) continue;
      const std::vector<int>& known = inst.side_information[static_cast<size_t>(ids[a])];
      if (!std::binary_search(known.begin(), known.end(), ids[b])) {
        result.is_clique = false;
        result.witness = {picks[a], picks[b]};
        return result;
      }
    }
  return result;
}

DecodeReport simulate_xor_code(const IndexCodingInstance& inst, const Schedule& s,
                               const std::vector<std::uint64_t>& payloads) {
  const std::vector<Message>& picks = s.picks;
  if (payloads.size() != picks.size())
    throw std::invalid_argument("xor code: need one payload per scheduled message");
  const CliqueCheck check = verify_clique(inst, picks);
  if (!check)
    throw NotAClique("xor code: " + to_string(check.witness->second) +
                     " unknown at receiver of " + to_string(check.witness->first));

  DecodeReport report;
  report.broadcast = 0;
  for (std::uint64_t p : payloads) report.broadcast ^= p;

  std::vector<int> ids(picks.size());
  for (size_t k = 0; k < picks.size(); ++k) {
    auto it = std::lower_bound(inst.messages.begin(), inst.messages.end(), picks[k]);
    ids[k] = static_cast<int>(it - inst.messages.begin());
  }
  for (size_t k = 0; k < picks.size(); ++k) {
    // Each receiver cancels every other scheduled payload out of the
    // broadcast using its side information.
    std::uint64_t decoded = report.broadcast;
    const std::vector<int>& known = inst.side_information[static_cast<size_t>(ids[k])];
    for (size_t other = 0; other < picks.size(); ++other)
      if (other != k && std::binary_search(known.begin(), known.end(), ids[other]))
        decoded ^= payloads[other];
    report.entries.push_back({picks[k], payloads[k], decoded, decoded == payloads[k]});
  }
  report.sum_rate = static_cast<int>(picks.size());
  report.all_ok = std::all_of(report.entries.begin(), report.entries.end(),
                              [](const DecodeReport::Entry& e) { return e.ok; });
  return report;
}

}  // namespace tim
