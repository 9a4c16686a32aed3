#ifndef TIM_GREEDY_HPP
#define TIM_GREEDY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tim/topology.hpp"

namespace tim {

enum class Direction { LeftToRight, RightToLeft };
enum class Mode { Safe, Literal };

struct Schedule {
  Direction direction = Direction::LeftToRight;
  std::vector<Message> picks;  // in selection order

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct OrthogonalityResult {
  bool orthogonal = true;
  // First violating ordered pair (m, m2): shared endpoint, or D(m) hears S(m2).
  std::optional<std::pair<Message, Message>> witness;
  std::string reason;

  explicit operator bool() const { return orthogonal; }
};

// A message set is orthogonal when sources are distinct, destinations are
// distinct, and every scheduled destination hears no scheduled source other
// than its own.  Throws UnknownMessage if a pair is not desired in t.
OrthogonalityResult is_orthogonal(const Topology& t, const std::vector<Message>& msgs);

// One-pass greedy scheduler.  Starts from the first source/destination of
// the scan direction, then repeatedly scans onward: next source the last
// picked destination cannot hear, then that source's desired destinations
// in scan order.  Literal mode accepts a destination as soon as it does not
// hear the previous pick's source; Safe mode (default) re-checks the full
// set for orthogonality.  On convex inputs the two agree (tested, not
// assumed).  Right-to-left runs as the mirror image of left-to-right.
// Throws StructureError / NotConvex on invalid input.
Schedule greedy_schedule(const Topology& t, Direction direction, Mode mode = Mode::Safe);

}  // namespace tim

#endif  // TIM_GREEDY_HPP
