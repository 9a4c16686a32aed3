#include "tim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tim/batch.hpp"
#include "tim/errors.hpp"
#include "tim/generator.hpp"
#include "tim/greedy.hpp"
#include "tim/index_coding.hpp"
#include "tim/oracle.hpp"
#include "tim/render.hpp"
#include "tim/topology.hpp"

namespace fs = std::filesystem;

namespace tim::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
}

// Size ranges accept "N" or "A..B" with 1 <= A <= B.
std::pair<int, int> parse_range(const std::string& flag, const std::string& s) {
  auto part = [&](const std::string& text) {
    int v = 0;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || p != end || v < 1)
      throw ParseError(flag + ": expected a positive integer or A..B range, got '" + s + "'");
    return v;
  };
  const size_t pos = s.find("..");
  if (pos == std::string::npos) {
    const int v = part(s);
    return {v, v};
  }
  const int a = part(s.substr(0, pos));
  const int b = part(s.substr(pos + 2));
  if (b < a) throw ParseError(flag + ": empty range '" + s + "'");
  return {a, b};
}

std::string numbered_name(const char* stem, int width, int k) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s-%0*d.tim", stem, width, k);
  return buffer;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"one-dimensional convex cellular networks: greedy orthogonal access with "
               "per-instance optimality certificates"};
  app.name("tim");
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "json"}));

  std::string validate_file;
  CLI::App* validate = app.add_subcommand("validate", "check structure and convexity");
  validate->add_option("file", validate_file, "TIM v1 file")->required();

  std::string solve_file, solve_direction = "ltr", solve_mode = "safe";
  CLI::App* solve = app.add_subcommand("solve", "run the greedy orthogonal scheduler");
  solve->add_option("file", solve_file, "TIM v1 file")->required();
  solve->add_option("--direction", solve_direction, "scan direction")
      ->check(CLI::IsMember({"ltr", "rtl"}));
  solve->add_option("--mode", solve_mode, "pick acceptance mode")
      ->check(CLI::IsMember({"safe", "literal"}));

  std::string oracle_file;
  int oracle_budget = 64;
  CLI::App* oracle = app.add_subcommand("oracle", "exact maximum orthogonal set");
  oracle->add_option("file", oracle_file, "TIM v1 file")->required();
  oracle->add_option("--budget", oracle_budget, "message budget for the exact search");

  std::string certify_file;
  CLI::App* certify_cmd = app.add_subcommand("certify", "schedule plus optimality certificate");
  certify_cmd->add_option("file", certify_file, "TIM v1 file")->required();

  std::string reciprocal_file;
  CLI::App* reciprocal_cmd =
      app.add_subcommand("reciprocal", "swap the roles of sources and destinations");
  reciprocal_cmd->add_option("file", reciprocal_file, "TIM v1 file")->required();

  std::string indexcode_file;
  CLI::App* indexcode = app.add_subcommand("indexcode", "index coding view and XOR decode demo");
  indexcode->add_option("file", indexcode_file, "TIM v1 file")->required();

  std::string gen_sources = "1..6", gen_destinations = "1..6", gen_out;
  std::uint64_t gen_seed = 0;
  int gen_count = 1;
  CLI::App* generate = app.add_subcommand("generate", "sample random convex networks");
  generate->add_option("--sources", gen_sources, "source count or A..B range");
  generate->add_option("--destinations", gen_destinations, "destination count or A..B range");
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--count", gen_count, "instances to produce")->check(CLI::Range(1, 9999));
  generate->add_option("--out", gen_out, "directory for random-NNNN.tim files");

  int enum_max_sources = 2, enum_max_destinations = 2;
  std::int64_t enum_budget = 10'000'000;
  std::string enum_out;
  CLI::App* enumerate = app.add_subcommand("enumerate", "every convex network up to given sizes");
  enumerate->add_option("--max-sources", enum_max_sources, "largest source count");
  enumerate->add_option("--max-destinations", enum_max_destinations, "largest destination count");
  enumerate->add_option("--budget", enum_budget, "largest candidate scan allowed");
  enumerate->add_option("--out", enum_out, "directory for enum-NNNNNN.tim files");

  std::string batch_dir, batch_sources = "1..10", batch_destinations = "1..12";
  int batch_random = 0;
  std::uint64_t batch_seed = 0;
  CLI::App* batch = app.add_subcommand("batch", "invariant suite over many instances");
  CLI::Option* batch_dir_opt =
      batch->add_option("--dir", batch_dir, "directory of .tim files (sorted by name)");
  CLI::Option* batch_random_opt =
      batch->add_option("--random", batch_random, "number of random instances")
          ->check(CLI::Range(1, 1000000));
  batch->add_option("--seed", batch_seed, "seed for generation and subset sampling");
  batch->add_option("--sources", batch_sources, "random size range");
  batch->add_option("--destinations", batch_destinations, "random size range");
  batch_dir_opt->excludes(batch_random_opt);

  {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("tim");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
  }

  const bool json = format == "json";
  auto emit = [&](const render::ojson& j, const std::string& text) {
    out << (json ? render::dump(j) : text);
  };

  try {
    if (*validate) {
      const Topology t = parse_topology_unvalidated(read_file(validate_file));
      ValidationReport report = check_structure(t);
      const ValidationReport convexity = validate_convexity(t);
      report.violations.insert(report.violations.end(), convexity.violations.begin(),
                               convexity.violations.end());
      emit(render::to_json(report), render::human(report));
      return report.ok() ? 0 : 1;
    }

    if (*solve) {
      const Topology t = parse_topology(read_file(solve_file));
      const Direction direction =
          solve_direction == "ltr" ? Direction::LeftToRight : Direction::RightToLeft;
      const Mode mode = solve_mode == "safe" ? Mode::Safe : Mode::Literal;
      const Schedule s = greedy_schedule(t, direction, mode);
      emit(render::to_json(s, mode), render::human(s, mode));
      return 0;
    }

    if (*oracle) {
      const Topology t = parse_topology(read_file(oracle_file));
      const MaxOrthogonalResult r = max_orthogonal(t, oracle_budget);
      emit(render::to_json(r), render::human(r));
      return 0;
    }

    if (*certify_cmd) {
      const Topology t = parse_topology(read_file(certify_file));
      const Certificate c = certify(t);
      emit(render::to_json(c), render::human(c));
      return 0;
    }

    if (*reciprocal_cmd) {
      const Topology r = reciprocal(parse_topology(read_file(reciprocal_file)));
      emit(render::to_json(r), serialize_topology(r));
      return 0;
    }

    if (*indexcode) {
      const Topology t = parse_topology(read_file(indexcode_file));
      const IndexCodingInstance inst = to_index_coding(t);
      render::ojson j;
      j["instance"] = render::to_json(inst);
      std::string text = render::human(inst);
      // Decode demo rides on the greedy schedule, so it needs convexity.
      if (validate_convexity(t).ok()) {
        const Schedule s = greedy_schedule(t, Direction::LeftToRight, Mode::Safe);
        std::vector<std::uint64_t> payloads(s.picks.size());
        for (size_t k = 0; k < payloads.size(); ++k)
          payloads[k] = (k + 1) * 0x9E3779B97F4A7C15ULL;
        const DecodeReport d = simulate_xor_code(inst, s, payloads);
        j["decode"] = render::to_json(d);
        text += render::human(d);
      }
      emit(j, text);
      return 0;
    }

    if (*generate) {
      const auto [min_s, max_s] = parse_range("--sources", gen_sources);
      const auto [min_d, max_d] = parse_range("--destinations", gen_destinations);
      GeneratorParams params;
      params.min_sources = min_s;
      params.max_sources = max_s;
      params.min_destinations = min_d;
      params.max_destinations = max_d;
      params.seed = gen_seed;
      RandomTopologyGenerator gen(params);
      if (!gen_out.empty()) fs::create_directories(gen_out);
      for (int k = 1; k <= gen_count; ++k) {
        const std::string text = serialize_topology(gen.next());
        if (gen_out.empty()) {
          out << text;
        } else {
          const fs::path path = fs::path(gen_out) / numbered_name("random", 4, k);
          write_file(path, text);
          out << path.string() << "\n";
        }
      }
      return 0;
    }

    if (*enumerate) {
      if (!enum_out.empty()) fs::create_directories(enum_out);
      int counter = 0;
      enumerate_topologies(
          enum_max_sources, enum_max_destinations,
          [&](const Topology& t) {
            ++counter;
            const std::string text = serialize_topology(t);
            if (enum_out.empty()) {
              out << text;
            } else {
              const fs::path path = fs::path(enum_out) / numbered_name("enum", 6, counter);
              write_file(path, text);
              out << path.string() << "\n";
            }
          },
          enum_budget);
      return 0;
    }

    if (*batch) {
      std::vector<NamedInstance> instances;
      if (!batch_dir.empty()) {
        if (!fs::is_directory(batch_dir))
          throw ParseError("--dir: not a directory: '" + batch_dir + "'");
        std::vector<fs::path> paths;
        for (const fs::directory_entry& entry : fs::directory_iterator(batch_dir))
          if (entry.is_regular_file() && entry.path().extension() == ".tim")
            paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
        for (const fs::path& path : paths) {
          NamedInstance inst;
          inst.name = path.filename().string();
          try {
            inst.topology = parse_topology_unvalidated(read_file(path.string()));
          } catch (const ParseError& e) {
            inst.load_error = e.what();
          } catch (const std::invalid_argument& e) {
            inst.load_error = e.what();
          }
          instances.push_back(std::move(inst));
        }
      } else if (batch_random > 0) {
        const auto [min_s, max_s] = parse_range("--sources", batch_sources);
        const auto [min_d, max_d] = parse_range("--destinations", batch_destinations);
        GeneratorParams params;
        params.min_sources = min_s;
        params.max_sources = max_s;
        params.min_destinations = min_d;
        params.max_destinations = max_d;
        params.seed = batch_seed;
        RandomTopologyGenerator gen(params);
        for (int k = 1; k <= batch_random; ++k)
          instances.push_back({numbered_name("random", 4, k), gen.next(), ""});
      } else {
        throw ParseError("batch: pass --dir DIR or --random N");
      }
      BatchOptions options;
      options.seed = batch_seed;
      const BatchReport report = batch_verify(instances, options);
      emit(render::to_json(report), render::human(report));
      err << "# elapsed_seconds=" << report.elapsed_seconds << "\n";
      return report.invariants_ok() ? 0 : 3;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimit& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownFixture& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GenerationExhausted& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotConvex& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ScheduleMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;  // unreachable with require_subcommand(1)
}

}  // namespace tim::cli
