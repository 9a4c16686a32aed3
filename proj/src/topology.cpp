#include "tim/topology.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tim/errors.hpp"

namespace tim {

std::string to_token(NodeRef n) {
  return (n.kind == NodeKind::Source ? "S" : "D") + std::to_string(n.index);
}

std::string to_string(const Message& m) {
  return "S" + std::to_string(m.source) + "->D" + std::to_string(m.destination);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::DCa: return "DC-a";
    case Rule::DCb: return "DC-b";
    case Rule::DCc: return "DC-c";
    case Rule::DCd: return "DC-d";
    case Rule::SCa: return "SC-a";
    case Rule::SCb: return "SC-b";
    case Rule::SCc: return "SC-c";
    case Rule::SCd: return "SC-d";
    case Rule::CoverD: return "COVER-D";
    case Rule::CoverS: return "COVER-S";
    case Rule::PlaceOrder: return "PLACE-ORDER";
  }
  return "?";
}

// --- Placement ----------------------------------------------------------

Placement::Placement(std::vector<NodeRef> order) : order_(std::move(order)) {
  int max_source = 0, max_dest = 0;
  for (const NodeRef& n : order_) {
    if (n.index < 1) throw std::invalid_argument("placement: node index must be >= 1");
    (n.kind == NodeKind::Source ? max_source : max_dest) = std::max(
        n.kind == NodeKind::Source ? max_source : max_dest, n.index);
  }
  source_pos_.assign(max_source, -1);
  dest_pos_.assign(max_dest, -1);
  for (int p = 0; p < static_cast<int>(order_.size()); ++p) {
    const NodeRef& n = order_[p];
    std::vector<int>& pos = n.kind == NodeKind::Source ? source_pos_ : dest_pos_;
    if (pos[n.index - 1] != -1)
      throw std::invalid_argument("placement: duplicate node " + to_token(n));
    pos[n.index - 1] = p;
  }
}

Placement Placement::interleaving(const std::vector<NodeKind>& kinds) {
  std::vector<NodeRef> order;
  order.reserve(kinds.size());
  int next_source = 1, next_dest = 1;
  for (NodeKind k : kinds)
    order.push_back({k, k == NodeKind::Source ? next_source++ : next_dest++});
  return Placement(std::move(order));
}

bool Placement::contains(NodeRef n) const {
  const std::vector<int>& pos = n.kind == NodeKind::Source ? source_pos_ : dest_pos_;
  return n.index >= 1 && n.index <= static_cast<int>(pos.size()) && pos[n.index - 1] != -1;
}

int Placement::position(NodeRef n) const {
  if (!contains(n)) throw std::invalid_argument("placement: no node " + to_token(n));
  const std::vector<int>& pos = n.kind == NodeKind::Source ? source_pos_ : dest_pos_;
  return pos[n.index - 1];
}

int Placement::count(NodeKind kind) const {
  int c = 0;
  for (const NodeRef& n : order_) c += n.kind == kind;
  return c;
}

int Placement::count_before(NodeKind kind, NodeRef n) const {
  int limit = position(n), c = 0;
  for (int p = 0; p < limit; ++p) c += order_[p].kind == kind;
  return c;
}

// --- Topology -----------------------------------------------------------

Topology::Topology(int num_sources, int num_destinations, Placement placement,
                   std::vector<LinkLabel> labels)
    : num_sources_(num_sources),
      num_destinations_(num_destinations),
      placement_(std::move(placement)),
      labels_(std::move(labels)) {
  if (num_sources_ < 1 || num_destinations_ < 1)
    throw std::invalid_argument("topology: needs at least one source and one destination");
  if (labels_.size() != static_cast<size_t>(num_sources_) * num_destinations_)
    throw std::invalid_argument("topology: label matrix size mismatch");
  if (placement_.order().size() != static_cast<size_t>(num_sources_ + num_destinations_))
    throw std::invalid_argument("topology: placement node count mismatch");
  for (int i = 1; i <= num_sources_; ++i)
    if (!placement_.contains(source_ref(i)))
      throw std::invalid_argument("topology: placement misses S" + std::to_string(i));
  for (int j = 1; j <= num_destinations_; ++j)
    if (!placement_.contains(destination_ref(j)))
      throw std::invalid_argument("topology: placement misses D" + std::to_string(j));
}

LinkLabel Topology::label(int source, int destination) const {
  if (source < 1 || source > num_sources_ || destination < 1 || destination > num_destinations_)
    throw std::invalid_argument("topology: link index out of range");
  return labels_[static_cast<size_t>(source - 1) * num_destinations_ + (destination - 1)];
}

std::vector<Message> Topology::messages() const {
  std::vector<Message> out;
  for (int s = 1; s <= num_sources_; ++s)
    for (int d = 1; d <= num_destinations_; ++d)
      if (label(s, d) == LinkLabel::Desired) out.push_back({s, d});
  return out;
}

std::vector<int> Topology::desired_destinations(int source) const {
  std::vector<int> out;
  for (int d = 1; d <= num_destinations_; ++d)
    if (label(source, d) == LinkLabel::Desired) out.push_back(d);
  return out;
}

std::vector<int> Topology::desired_sources(int destination) const {
  std::vector<int> out;
  for (int s = 1; s <= num_sources_; ++s)
    if (label(s, destination) == LinkLabel::Desired) out.push_back(s);
  return out;
}

// --- text format --------------------------------------------------------

namespace {

int parse_int(const std::string& tok, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1)
    throw ParseError(std::string("expected positive integer for ") + what + ", got '" + tok + "'");
  return value;
}

// Comment-stripped, whitespace-tokenized lines; blank lines dropped.
std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

NodeRef parse_placement_token(const std::string& tok) {
  if (tok.size() < 2 || (tok[0] != 'S' && tok[0] != 'D'))
    throw ParseError("bad placement token '" + tok + "'");
  NodeKind kind = tok[0] == 'S' ? NodeKind::Source : NodeKind::Destination;
  return {kind, parse_int(tok.substr(1), "placement token index")};
}

}  // namespace

Topology parse_topology_unvalidated(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.size() < 4) throw ParseError("truncated file: header, counts and placement required");
  if (lines[0] != std::vector<std::string>{"TIM", "v1"})
    throw ParseError("first line must be 'TIM v1'");
  if (lines[1].size() != 2 || lines[1][0] != "sources")
    throw ParseError("second line must be 'sources <T>'");
  int num_sources = parse_int(lines[1][1], "sources");
  if (lines[2].size() != 2 || lines[2][0] != "destinations")
    throw ParseError("third line must be 'destinations <K>'");
  int num_destinations = parse_int(lines[2][1], "destinations");
  if (lines[3].size() < 2 || lines[3][0] != "placement")
    throw ParseError("fourth line must be 'placement <token>...'");

  std::vector<NodeRef> order;
  for (size_t i = 1; i < lines[3].size(); ++i) {
    NodeRef n = parse_placement_token(lines[3][i]);
    int limit = n.kind == NodeKind::Source ? num_sources : num_destinations;
    if (n.index > limit) throw ParseError("placement node " + to_token(n) + " out of range");
    if (std::find(order.begin(), order.end(), n) != order.end())
      throw ParseError("placement lists " + to_token(n) + " twice");
    order.push_back(n);
  }
  if (order.size() != static_cast<size_t>(num_sources + num_destinations))
    throw ParseError("placement must list every source and destination exactly once");

  std::vector<LinkLabel> labels(static_cast<size_t>(num_sources) * num_destinations,
                                LinkLabel::Weak);
  for (size_t l = 4; l < lines.size(); ++l) {
    const std::vector<std::string>& toks = lines[l];
    LinkLabel label;
    if (toks[0] == "desired") label = LinkLabel::Desired;
    else if (toks[0] == "interfering") label = LinkLabel::Interfering;
    else throw ParseError("unknown line keyword '" + toks[0] + "'");
    if (toks.size() != 3) throw ParseError("'" + toks[0] + "' line needs exactly two indices");
    int s = parse_int(toks[1], "link source");
    int d = parse_int(toks[2], "link destination");
    if (s > num_sources || d > num_destinations)
      throw ParseError("link S" + std::to_string(s) + "->D" + std::to_string(d) +
                       " out of range");
    LinkLabel& cell = labels[static_cast<size_t>(s - 1) * num_destinations + (d - 1)];
    if (cell != LinkLabel::Weak)
      throw ParseError("pair S" + std::to_string(s) + "->D" + std::to_string(d) +
                       " listed twice");
    cell = label;
  }
  return Topology(num_sources, num_destinations, Placement(std::move(order)),
                  std::move(labels));
}

Topology parse_topology(const std::string& text) {
  Topology t = parse_topology_unvalidated(text);
  ValidationReport structure = check_structure(t);
  if (!structure.ok()) {
    const Violation& v = structure.violations.front();
    std::string what = std::string("structural rule ") + rule_name(v.rule) + " violated at";
    for (const NodeRef& n : v.witness) what += " " + to_token(n);
    throw StructureError(v, what);
  }
  return t;
}

std::string serialize_topology(const Topology& t) {
  std::ostringstream out;
  out << "TIM v1\n";
  out << "sources " << t.num_sources() << "\n";
  out << "destinations " << t.num_destinations() << "\n";
  out << "placement";
  for (const NodeRef& n : t.placement().order()) out << " " << to_token(n);
  out << "\n";
  // messages() is already sorted by (source, destination)
  for (const Message& m : t.messages()) out << "desired " << m.source << " " << m.destination << "\n";
  for (int s = 1; s <= t.num_sources(); ++s)
    for (int d = 1; d <= t.num_destinations(); ++d)
      if (t.label(s, d) == LinkLabel::Interfering) out << "interfering " << s << " " << d << "\n";
  return out.str();
}

// --- validation ---------------------------------------------------------

ValidationReport check_structure(const Topology& t) {
  ValidationReport report;
  // PLACE-ORDER: indices of each kind must increase left to right.
  NodeRef last_source{NodeKind::Source, 0}, last_dest{NodeKind::Destination, 0};
  for (const NodeRef& n : t.placement().order()) {
    NodeRef& last = n.kind == NodeKind::Source ? last_source : last_dest;
    if (last.index != 0 && n.index <= last.index)
      report.violations.push_back({Rule::PlaceOrder, {last, n}});
    last = n;
  }
  for (int d = 1; d <= t.num_destinations(); ++d)
    if (t.desired_sources(d).empty())
      report.violations.push_back({Rule::CoverD, {destination_ref(d)}});
  for (int s = 1; s <= t.num_sources(); ++s)
    if (t.desired_destinations(s).empty())
      report.violations.push_back({Rule::CoverS, {source_ref(s)}});
  return report;
}

ValidationReport validate_convexity(const Topology& t) {
  ValidationReport report;
  const Placement& pl = t.placement();

  // DC-a/b: a desired source with the destination beyond it forces every
  // source in between to be desired.  DC-c/d: an unheard source between the
  // destination and a farther source forces the farther one unheard.
  auto scan = [&](Rule rule, bool sources_quantified, bool right_side, bool desired_rule) {
    int n_outer = sources_quantified ? t.num_sources() : t.num_destinations();
    int n_inner = sources_quantified ? t.num_destinations() : t.num_sources();
    NodeKind pair_kind = sources_quantified ? NodeKind::Source : NodeKind::Destination;
    NodeKind apex_kind = sources_quantified ? NodeKind::Destination : NodeKind::Source;
    auto link = [&](int pair_index, int apex_index) {
      return sources_quantified ? t.label(pair_index, apex_index) : t.label(apex_index, pair_index);
    };
    for (int i = 1; i <= n_outer; ++i)
      for (int j = 1; j <= n_outer; ++j) {
        if (i == j) continue;
        int pi = pl.position({pair_kind, i}), pj = pl.position({pair_kind, j});
        for (int k = 1; k <= n_inner; ++k) {
          int pk = pl.position({apex_kind, k});
          // i is the far node, j the middle node, k the apex of the triple
          bool pattern = right_side ? (pk < pj && pj < pi) : (pi < pj && pj < pk);
          if (!pattern) continue;
          bool violated = desired_rule
                              ? link(i, k) == LinkLabel::Desired && link(j, k) != LinkLabel::Desired
                              : link(j, k) == LinkLabel::Weak && link(i, k) != LinkLabel::Weak;
          if (!violated) continue;
          std::vector<NodeRef> w = {{pair_kind, i}, {pair_kind, j}, {apex_kind, k}};
          std::sort(w.begin(), w.end(),
                    [&](NodeRef a, NodeRef b) { return pl.position(a) < pl.position(b); });
          report.violations.push_back({rule, std::move(w)});
        }
      }
  };

  scan(Rule::DCa, true, false, true);
  scan(Rule::DCb, true, true, true);
  scan(Rule::DCc, true, false, false);
  scan(Rule::DCd, true, true, false);
  scan(Rule::SCa, false, false, true);
  scan(Rule::SCb, false, true, true);
  scan(Rule::SCc, false, false, false);
  scan(Rule::SCd, false, true, false);
  return report;
}

namespace {

// Contiguous index interval [lo, hi] anchored at a node with `left_count`
// other-kind nodes to its left: lo <= left_count+1 and hi >= left_count.
bool anchored_interval(const std::vector<int>& members, int left_count, int* lo, int* hi) {
  if (members.empty()) return false;
  *lo = members.front();
  *hi = members.back();
  if (*hi - *lo + 1 != static_cast<int>(members.size())) return false;
  return *lo <= left_count + 1 && *hi >= left_count;
}

}  // namespace

IntervalProfile interval_profile(const Topology& t) {
  IntervalProfile profile;
  bool convex = true;

  for (int d = 1; d <= t.num_destinations() && convex; ++d) {
    int left = t.placement().count_before(NodeKind::Source, destination_ref(d));
    std::vector<int> desired = t.desired_sources(d), heard;
    for (int s = 1; s <= t.num_sources(); ++s)
      if (t.label(s, d) != LinkLabel::Weak) heard.push_back(s);
    DestinationProfile p;
    convex = anchored_interval(desired, left, &p.desired_lo, &p.desired_hi) &&
             anchored_interval(heard, left, &p.heard_lo, &p.heard_hi);
    profile.destinations.push_back(p);
  }
  for (int s = 1; s <= t.num_sources() && convex; ++s) {
    int left = t.placement().count_before(NodeKind::Destination, source_ref(s));
    std::vector<int> desired = t.desired_destinations(s), reaching;
    for (int d = 1; d <= t.num_destinations(); ++d)
      if (t.label(s, d) != LinkLabel::Weak) reaching.push_back(d);
    SourceProfile p;
    convex = anchored_interval(desired, left, &p.desired_lo, &p.desired_hi) &&
             anchored_interval(reaching, left, &p.reaching_lo, &p.reaching_hi);
    profile.sources.push_back(p);
  }
  if (!convex) {
    // Name the culprit through the rule scan so both validation routes
    // report the same witness.
    ValidationReport rules = validate_convexity(t);
    if (rules.ok())
      throw InvariantViolation("interval profile failed but the rule scan found no violation");
    const Violation& v = rules.violations.front();
    std::string what = std::string("not convex: rule ") + rule_name(v.rule) + " violated at";
    for (const NodeRef& n : v.witness) what += " " + to_token(n);
    throw NotConvex(v, what);
  }
  return profile;
}

// --- structural operations ----------------------------------------------

Topology reciprocal(const Topology& t) {
  // Kinds flip in place; each kind is renumbered 1.. left to right, which
  // under PLACE-ORDER keeps every node's original index.
  std::vector<NodeKind> kinds;
  kinds.reserve(t.placement().order().size());
  std::vector<int> new_source_of_dest(t.num_destinations() + 1, 0);
  std::vector<int> new_dest_of_source(t.num_sources() + 1, 0);
  int next_source = 1, next_dest = 1;
  for (const NodeRef& n : t.placement().order()) {
    if (n.kind == NodeKind::Destination) {
      kinds.push_back(NodeKind::Source);
      new_source_of_dest[n.index] = next_source++;
    } else {
      kinds.push_back(NodeKind::Destination);
      new_dest_of_source[n.index] = next_dest++;
    }
  }
  int new_sources = t.num_destinations(), new_dests = t.num_sources();
  std::vector<LinkLabel> labels(static_cast<size_t>(new_sources) * new_dests, LinkLabel::Weak);
  for (int s = 1; s <= t.num_sources(); ++s)
    for (int d = 1; d <= t.num_destinations(); ++d)
      labels[static_cast<size_t>(new_source_of_dest[d] - 1) * new_dests +
             (new_dest_of_source[s] - 1)] = t.label(s, d);
  return Topology(new_sources, new_dests, Placement::interleaving(kinds), std::move(labels));
}

Topology mirror(const Topology& t) {
  int T = t.num_sources(), K = t.num_destinations();
  std::vector<NodeKind> kinds;
  kinds.reserve(T + K);
  const std::vector<NodeRef>& order = t.placement().order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) kinds.push_back(it->kind);
  std::vector<LinkLabel> labels(static_cast<size_t>(T) * K, LinkLabel::Weak);
  for (int s = 1; s <= T; ++s)
    for (int d = 1; d <= K; ++d)
      labels[static_cast<size_t>(T - s) * K + (K - d)] = t.label(s, d);
  return Topology(T, K, Placement::interleaving(kinds), std::move(labels));
}

Topology eliminate(const Topology& t, int leading_sources, int leading_destinations) {
  if (leading_sources < 0 || leading_destinations < 0 ||
      leading_sources > t.num_sources() || leading_destinations > t.num_destinations())
    throw std::invalid_argument("eliminate: prefix lengths out of range");
  if (leading_sources == t.num_sources() || leading_destinations == t.num_destinations()) {
    if (leading_sources == 0 && leading_destinations == 0) return t;
    if (leading_sources == t.num_sources())
      throw EmptyResult("eliminate: would remove every source");
    throw EmptyResult("eliminate: would remove every destination");
  }

  std::vector<NodeRef> order;
  for (const NodeRef& n : t.placement().order()) {
    int cut = n.kind == NodeKind::Source ? leading_sources : leading_destinations;
    if (n.index > cut) order.push_back({n.kind, n.index - cut});
  }
  int T = t.num_sources() - leading_sources, K = t.num_destinations() - leading_destinations;
  std::vector<LinkLabel> labels(static_cast<size_t>(T) * K, LinkLabel::Weak);
  for (int s = 1; s <= T; ++s)
    for (int d = 1; d <= K; ++d)
      labels[static_cast<size_t>(s - 1) * K + (d - 1)] =
          t.label(s + leading_sources, d + leading_destinations);
  Topology result(T, K, Placement(std::move(order)), std::move(labels));

  // Survivors must keep at least one desired link; witness uses the
  // original (pre-elimination) index.
  for (int d = 1; d <= K; ++d)
    if (result.desired_sources(d).empty())
      throw CoverageLost(destination_ref(d + leading_destinations),
                         "eliminate: D" + std::to_string(d + leading_destinations) +
                             " would lose its last desired link");
  for (int s = 1; s <= T; ++s)
    if (result.desired_destinations(s).empty())
      throw CoverageLost(source_ref(s + leading_sources),
                         "eliminate: S" + std::to_string(s + leading_sources) +
                             " would lose its last desired link");
  return result;
}

}  // namespace tim
