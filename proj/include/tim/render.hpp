#ifndef TIM_RENDER_HPP
#define TIM_RENDER_HPP

#include <string>

#include <json.hpp>

#include "tim/batch.hpp"
#include "tim/greedy.hpp"
#include "tim/index_coding.hpp"
#include "tim/oracle.hpp"
#include "tim/topology.hpp"

namespace tim::render {

// All renderers are pure: identical inputs give byte-identical output.
// ordered_json keeps the documented field order stable.
using ojson = nlohmann::ordered_json;

ojson to_json(const Topology& t);
ojson to_json(const ValidationReport& r);
ojson to_json(const Message& m);
ojson to_json(const Schedule& s, Mode mode);
ojson to_json(const MaxOrthogonalResult& r);
ojson to_json(const Certificate& c);
ojson to_json(const IndexCodingInstance& ic);
ojson to_json(const DecodeReport& d);
ojson to_json(const BatchReport& r);  // elapsed_seconds deliberately omitted

std::string human(const ValidationReport& r);
std::string human(const Schedule& s, Mode mode);
std::string human(const MaxOrthogonalResult& r);
// Sections SCHEDULE / BLOCKS / TOPO-ORDERS / SUM-DOF.
std::string human(const Certificate& c);
std::string human(const IndexCodingInstance& ic);
std::string human(const DecodeReport& d);
std::string human(const BatchReport& r);  // counters + failure dumps, no elapsed

std::string dump(const ojson& j);  // 2-space indent + trailing newline

}  // namespace tim::render

#endif  // TIM_RENDER_HPP
