#include "tim/render.hpp"

#include <cstdio>
#include <sstream>

namespace tim::render {

namespace {

std::string hex(std::uint64_t v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "0x%llx", static_cast<unsigned long long>(v));
  return buffer;
}

const char* direction_name(Direction d) { return d == Direction::LeftToRight ? "ltr" : "rtl"; }
const char* mode_name(Mode m) { return m == Mode::Safe ? "safe" : "literal"; }

ojson pair_list(const std::vector<Message>& msgs) {
  ojson arr = ojson::array();
  for (const Message& m : msgs) arr.push_back({m.source, m.destination});
  return arr;
}

void append_schedule_lines(std::ostringstream& os, const Schedule& s, Mode mode) {
  os << "direction " << direction_name(s.direction) << "\n";
  os << "mode " << mode_name(mode) << "\n";
  for (const Message& m : s.picks) os << "pick " << to_string(m) << "\n";
  os << "sum_dof " << s.picks.size() << "\n";
}

}  // namespace

ojson to_json(const Topology& t) {
  ojson j;
  j["sources"] = t.num_sources();
  j["destinations"] = t.num_destinations();
  ojson tokens = ojson::array();
  for (const NodeRef& n : t.placement().order()) tokens.push_back(to_token(n));
  j["placement"] = std::move(tokens);
  ojson desired = ojson::array();
  ojson interfering = ojson::array();
  for (int s = 1; s <= t.num_sources(); ++s)
    for (int d = 1; d <= t.num_destinations(); ++d) {
      if (t.label(s, d) == LinkLabel::Desired) desired.push_back({s, d});
      if (t.label(s, d) == LinkLabel::Interfering) interfering.push_back({s, d});
    }
  j["desired"] = std::move(desired);
  j["interfering"] = std::move(interfering);
  return j;
}

ojson to_json(const ValidationReport& r) {
  ojson j;
  j["ok"] = r.ok();
  ojson violations = ojson::array();
  for (const Violation& v : r.violations) {
    ojson witness = ojson::array();
    for (const NodeRef& n : v.witness) witness.push_back(to_token(n));
    violations.push_back({{"rule", rule_name(v.rule)}, {"witness", std::move(witness)}});
  }
  j["violations"] = std::move(violations);
  return j;
}

ojson to_json(const Message& m) {
  return ojson{{"source", m.source}, {"destination", m.destination}};
}

ojson to_json(const Schedule& s, Mode mode) {
  ojson j;
  j["direction"] = direction_name(s.direction);
  j["mode"] = mode_name(mode);
  ojson picks = ojson::array();
  for (const Message& m : s.picks) picks.push_back(to_json(m));
  j["picks"] = std::move(picks);
  j["sum_dof"] = s.picks.size();
  return j;
}

ojson to_json(const MaxOrthogonalResult& r) {
  ojson j;
  j["size"] = r.size;
  ojson witness = ojson::array();
  for (const Message& m : r.witness) witness.push_back(to_json(m));
  j["witness"] = std::move(witness);
  return j;
}

ojson to_json(const Certificate& c) {
  ojson j;
  j["schedule"] = to_json(c.schedule, Mode::Safe);
  ojson blocks = ojson::array();
  for (const std::vector<Message>& block : c.blocks) blocks.push_back(pair_list(block));
  j["blocks"] = std::move(blocks);
  ojson orders = ojson::array();
  for (const std::vector<NodeRef>& order : c.topo_orders) {
    ojson tokens = ojson::array();
    for (const NodeRef& n : order) tokens.push_back(to_token(n));
    orders.push_back(std::move(tokens));
  }
  j["topo_orders"] = std::move(orders);
  j["sum_dof"] = c.sum_dof;
  return j;
}

ojson to_json(const IndexCodingInstance& ic) {
  ojson j;
  ojson msgs = ojson::array();
  for (const Message& m : ic.messages) msgs.push_back(to_json(m));
  j["messages"] = std::move(msgs);
  ojson side = ojson::array();
  for (const std::vector<int>& known : ic.side_information) {
    ojson ids = ojson::array();
    for (int id : known) ids.push_back(id + 1);  // rendered ids are 1-based
    side.push_back(std::move(ids));
  }
  j["side_information"] = std::move(side);
  return j;
}

ojson to_json(const DecodeReport& d) {
  ojson j;
  j["broadcast"] = d.broadcast;
  j["sum_rate"] = d.sum_rate;
  j["all_ok"] = d.all_ok;
  ojson entries = ojson::array();
  for (const DecodeReport::Entry& e : d.entries)
    entries.push_back({{"message", to_json(e.message)},
                       {"payload", e.payload},
                       {"decoded", e.decoded},
                       {"ok", e.ok}});
  j["entries"] = std::move(entries);
  return j;
}

ojson to_json(const BatchReport& r) {
  ojson j;
  j["instances_run"] = r.instances_run;
  j["validation_failures"] = r.validation_failures;
  j["triple_equality_failures"] = r.triple_equality_failures;
  j["direction_equality_failures"] = r.direction_equality_failures;
  j["duality_failures"] = r.duality_failures;
  j["mode_equivalence_failures"] = r.mode_equivalence_failures;
  j["partition_acyclicity_failures"] = r.partition_acyclicity_failures;
  j["wrap_pattern_failures"] = r.wrap_pattern_failures;
  j["codec_failures"] = r.codec_failures;
  j["recursion_failures"] = r.recursion_failures;
  j["invariants_ok"] = r.invariants_ok();
  ojson failures = ojson::array();
  for (const BatchReport::FailureDump& f : r.failures)
    failures.push_back(
        {{"check", f.check}, {"instance", f.instance}, {"detail", f.detail}, {"tim", f.tim}});
  j["failures"] = std::move(failures);
  return j;
}

std::string human(const ValidationReport& r) {
  if (r.ok()) return "ok\n";
  std::ostringstream os;
  for (const Violation& v : r.violations) {
    os << "violation " << rule_name(v.rule) << " witness";
    for (const NodeRef& n : v.witness) os << ' ' << to_token(n);
    os << "\n";
  }
  return os.str();
}

std::string human(const Schedule& s, Mode mode) {
  std::ostringstream os;
  append_schedule_lines(os, s, mode);
  return os.str();
}

std::string human(const MaxOrthogonalResult& r) {
  std::ostringstream os;
  os << "size " << r.size << "\n";
  if (!r.witness.empty()) {
    os << "witness";
    for (const Message& m : r.witness) os << ' ' << to_string(m);
    os << "\n";
  }
  return os.str();
}

std::string human(const Certificate& c) {
  std::ostringstream os;
  os << "SCHEDULE\n";
  append_schedule_lines(os, c.schedule, Mode::Safe);
  os << "BLOCKS\n";
  for (size_t k = 0; k < c.blocks.size(); ++k) {
    os << "block " << k + 1 << ":";
    for (const Message& m : c.blocks[k]) os << ' ' << to_string(m);
    os << "\n";
  }
  os << "TOPO-ORDERS\n";
  for (size_t k = 0; k < c.topo_orders.size(); ++k) {
    os << "block " << k + 1 << ":";
    for (const NodeRef& n : c.topo_orders[k]) os << ' ' << to_token(n);
    os << "\n";
  }
  os << "SUM-DOF\n" << c.sum_dof << "\n";
  return os.str();
}

std::string human(const IndexCodingInstance& ic) {
  std::ostringstream os;
  for (size_t a = 0; a < ic.messages.size(); ++a) {
    os << "message " << a + 1 << ' ' << to_string(ic.messages[a]) << " knows";
    const std::vector<int>& known = ic.side_information[a];
    if (known.empty()) {
      os << " -";
    } else {
      for (int id : known) os << ' ' << id + 1;
    }
    os << "\n";
  }
  return os.str();
}

std::string human(const DecodeReport& d) {
  std::ostringstream os;
  os << "broadcast " << hex(d.broadcast) << "\n";
  for (const DecodeReport::Entry& e : d.entries)
    os << to_string(e.message) << " payload " << hex(e.payload) << " decoded " << hex(e.decoded)
       << (e.ok ? " ok" : " FAIL") << "\n";
  os << "sum_rate " << d.sum_rate << "\n";
  os << "all_ok " << (d.all_ok ? "true" : "false") << "\n";
  return os.str();
}

std::string human(const BatchReport& r) {
  std::ostringstream os;
  os << "instances_run " << r.instances_run << "\n";
  os << "validation_failures " << r.validation_failures << "\n";
  os << "triple_equality_failures " << r.triple_equality_failures << "\n";
  os << "direction_equality_failures " << r.direction_equality_failures << "\n";
  os << "duality_failures " << r.duality_failures << "\n";
  os << "mode_equivalence_failures " << r.mode_equivalence_failures << "\n";
  os << "partition_acyclicity_failures " << r.partition_acyclicity_failures << "\n";
  os << "wrap_pattern_failures " << r.wrap_pattern_failures << "\n";
  os << "codec_failures " << r.codec_failures << "\n";
  os << "recursion_failures " << r.recursion_failures << "\n";
  os << "invariants_ok " << (r.invariants_ok() ? "true" : "false") << "\n";
  for (const BatchReport::FailureDump& f : r.failures) {
    os << "failure " << f.check << " on " << f.instance << ": " << f.detail << "\n";
    std::istringstream tim(f.tim);
    std::string line;
    while (std::getline(tim, line)) os << "  " << line << "\n";
  }
  return os.str();
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace tim::render
