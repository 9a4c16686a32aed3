#include "tim/greedy.hpp"

#include <string>

#include "tim/errors.hpp"

namespace tim {

OrthogonalityResult is_orthogonal(const Topology& t, const std::vector<Message>& msgs) {
  for (const Message& m : msgs)
    if (m.source < 1 || m.source > t.num_sources() || m.destination < 1 ||
        m.destination > t.num_destinations() || t.label(m.source, m.destination) != LinkLabel::Desired)
      throw UnknownMessage(m, to_string(m) + " is not a desired pair of this topology");

  for (size_t a = 0; a < msgs.size(); ++a)
    for (size_t b = 0; b < msgs.size(); ++b) {
      if (a == b) continue;
      const Message& m = msgs[a];
      const Message& m2 = msgs[b];
      if (m.source == m2.source)
        return {false, {{m, m2}}, "shared source S" + std::to_string(m.source)};
      if (m.destination == m2.destination)
        return {false, {{m, m2}}, "shared destination D" + std::to_string(m.destination)};
      if (t.label(m2.source, m.destination) != LinkLabel::Weak)
        return {false, {{m, m2}},
                "D" + std::to_string(m.destination) + " hears S" + std::to_string(m2.source)};
    }
  return {};
}

namespace {

void require_valid_convex(const Topology& t) {
  ValidationReport structure = check_structure(t);
  if (!structure.ok()) {
    const Violation& v = structure.violations.front();
    std::string what = std::string("structural rule ") + rule_name(v.rule) + " violated at";
    for (const NodeRef& n : v.witness) what += " " + to_token(n);
    throw StructureError(v, what);
  }
  ValidationReport convexity = validate_convexity(t);
  if (!convexity.ok()) {
    const Violation& v = convexity.violations.front();
    std::string what = std::string("not convex: rule ") + rule_name(v.rule) + " violated at";
    for (const NodeRef& n : v.witness) what += " " + to_token(n);
    throw NotConvex(v, what);
  }
}

// Left-to-right pass.  Literal mode checks new candidates only against the
// immediately previous pick; safe mode re-checks the whole set.
std::vector<Message> ltr_core(const Topology& t, Mode mode) {
  if (t.label(1, 1) != LinkLabel::Desired)
    throw BaseCaseMissing("S1->D1 is not a desired pair on a validated convex input");
  std::vector<Message> picks = {{1, 1}};
  int source = 2;
  while (source <= t.num_sources()) {
    const Message last = picks.back();
    bool picked = false;
    for (; source <= t.num_sources() && !picked; ++source) {
      if (mode == Mode::Literal && t.label(source, last.destination) != LinkLabel::Weak)
        continue;  // the previous destination hears this source
      for (int d : t.desired_destinations(source)) {
        if (mode == Mode::Literal) {
          if (t.label(last.source, d) != LinkLabel::Weak) continue;
        } else {
          std::vector<Message> extended = picks;
          extended.push_back({source, d});
          if (!is_orthogonal(t, extended)) continue;
        }
        picks.push_back({source, d});
        picked = true;
        break;
      }
    }
  }
  return picks;
}

}  // namespace

Schedule greedy_schedule(const Topology& t, Direction direction, Mode mode) {
  require_valid_convex(t);
  if (direction == Direction::LeftToRight) return {direction, ltr_core(t, mode)};

  // Right-to-left is exactly the left-to-right pass on the mirror image.
  Topology flipped = mirror(t);
  std::vector<Message> picks = ltr_core(flipped, mode);
  for (Message& m : picks) {
    m.source = t.num_sources() + 1 - m.source;
    m.destination = t.num_destinations() + 1 - m.destination;
  }
  return {direction, picks};
}

}  // namespace tim
