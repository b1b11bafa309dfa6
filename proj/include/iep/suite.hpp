#pragma once

// Named graph families and reproducible experiment suites.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iep/ep_engine.hpp"
#include "iep/generators.hpp"
#include "iep/graph_io.hpp"
#include "iep/json_io.hpp"

namespace iep {

struct GeneratedGraph {
  Multigraph graph;
  std::optional<Json> coords;
};

// Families: theta r | path n | cycle n | star n | complete n | grid k r |
// wall k | wallplus k | random n m maxmult | random-connected n m maxmult.
// Random families use `seed`.
inline GeneratedGraph generate(const std::string& family, const std::vector<int>& p, std::uint64_t seed) {
  auto need = [&](std::size_t count) {
    if (p.size() != count) {
      throw Error(ErrorKind::kInvalidArgument,
                  "family '" + family + "' takes " + std::to_string(count) + " parameter(s), got " + std::to_string(p.size()));
    }
  };
  GeneratedGraph out;
  if (family == "theta") {
    need(1);
    out.graph = theta(p[0]);
  } else if (family == "path") {
    need(1);
    out.graph = path_graph(p[0]);
  } else if (family == "cycle") {
    need(1);
    out.graph = cycle_graph(p[0]);
  } else if (family == "star") {
    need(1);
    out.graph = star(p[0]);
  } else if (family == "complete") {
    need(1);
    out.graph = complete_graph(p[0]);
  } else if (family == "grid") {
    need(2);
    GridGraph gg = grid(p[0], p[1]);
    out.graph = gg.graph;
    out.coords = coords_to_json(gg.coords);
  } else if (family == "wall" || family == "wallplus") {
    need(1);
    Wall w = family == "wall" ? wall(p[0]) : wall_plus(p[0]);
    out.graph = w.graph;
    out.coords = wall_coords_to_json(w);
  } else if (family == "random") {
    need(3);
    out.graph = random_multigraph(p[0], p[1], p[2], seed);
  } else if (family == "random-connected") {
    need(3);
    out.graph = random_connected_multigraph(p[0], p[1], p[2], seed);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown graph family '" + family + "'");
  }
  return out;
}

inline Multigraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path.string());
  return parse_graph(in);
}

// Writes through a temporary file so readers never see half a report.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

// A graph entry is {"file": path} or {"family": name, "params": [...],
// "seed": n}; relative files resolve against the suite file's directory.
inline Multigraph graph_from_spec(const Json& j, const std::filesystem::path& base) {
  if (j.contains("file")) {
    std::filesystem::path p = j.at("file").get<std::string>();
    return read_graph_file(p.is_absolute() ? p : base / p);
  }
  return generate(j.at("family").get<std::string>(), j.value("params", std::vector<int>{}), j.value("seed", std::uint64_t{0}))
      .graph;
}

struct SuiteInstance {
  std::string name;
  Json graph;
  Json pattern;
  std::string mode = "edge";
  std::uint64_t budget = SearchBudget::kUnlimited;
  bool planar_asserted = false;
  bool oracles = true;
  bool lemma_oracles = false;
};

struct SuiteSpec {
  std::vector<SuiteInstance> instances;
  std::filesystem::path base;
};

inline SuiteSpec suite_from_json(const Json& j, const std::filesystem::path& base) {
  SuiteSpec s;
  s.base = base;
  try {
    for (const auto& item : j.value("instances", Json::array())) {
      SuiteInstance in;
      in.name = item.at("name").get<std::string>();
      in.graph = item.at("graph");
      in.pattern = item.at("pattern");
      in.mode = item.value("mode", std::string("edge"));
      if (item.contains("budget")) in.budget = item.at("budget").get<std::uint64_t>();
      in.planar_asserted = item.value("planar", false);
      in.oracles = item.value("oracles", true);
      in.lemma_oracles = item.value("lemma_oracles", false);
      if (in.mode != "edge" && in.mode != "vertex") throw Error(ErrorKind::kParseError, "mode must be edge or vertex");
      s.instances.push_back(std::move(in));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("suite JSON: ") + e.what());
  }
  return s;
}

struct SuiteOutcome {
  int exit_code = 0;
  std::vector<std::string> names;
  std::vector<int> codes;
};

struct SuiteOptions {
  std::filesystem::path output;
  bool sabotage_drop_cover_edge = false;
  std::optional<std::uint64_t> default_budget;
};

// One report per instance plus summary.csv. Exit code: 1 if any check
// failed or an instance raised an error, else 2 if any budget ran out.
inline SuiteOutcome run_suite(const SuiteSpec& spec, const SuiteOptions& options) {
  std::filesystem::create_directories(options.output);
  std::ostringstream csv;
  csv << "name,mode,vertices,edges,width,partition_width,packing,cover,bound,margin,oracle_pack,oracle_cover,treewidth,exit,error\n";
  SuiteOutcome out;
  bool failed = false;
  bool budget = false;
  for (const auto& in : spec.instances) {
    int code = 0;
    std::string error;
    EPReport r;
    try {
      Multigraph g = graph_from_spec(in.graph, spec.base);
      Multigraph h = graph_from_spec(in.pattern, spec.base);
      std::uint64_t nodes = in.budget;
      if (nodes == SearchBudget::kUnlimited && options.default_budget) nodes = *options.default_budget;
      if (in.mode == "edge") {
        CertifyOptions co;
        co.budget = nodes;
        co.planar_asserted = in.planar_asserted;
        co.oracles = in.oracles;
        co.lemma_oracles = in.lemma_oracles;
        co.sabotage_drop_cover_edge = options.sabotage_drop_cover_edge;
        r = ep_edge_certify(g, h, co);
      } else {
        r = ep_vertex_report(g, h, nodes);
      }
      r.instance = in.name;
      code = r.exit_code();
      write_file_atomic(options.output / (in.name + ".json"), ep_report_to_json(r).dump(2) + "\n");
    } catch (const Error& e) {
      code = 1;
      error = e.what();
      Json j{{"schema", "iep.ep-report"}, {"version", EPReport::kSchemaVersion}, {"instance", in.name}, {"error", error}};
      write_file_atomic(options.output / (in.name + ".json"), j.dump(2) + "\n");
    }
    failed = failed || code == 1;
    budget = budget || code == 2;
    out.names.push_back(in.name);
    out.codes.push_back(code);

    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    std::string cover = r.mode == "edge" ? std::to_string(r.cover.size()) : std::to_string(r.vertex_cover.size());
    std::string packing = r.mode == "edge" ? std::to_string(r.packing.size()) : opt(r.oracle_pack);
    std::string margin = r.mode == "edge" && error.empty()
                             ? std::to_string(r.bound - static_cast<std::int64_t>(r.cover.size()))
                             : std::string();
    for (char& c : error) {
      if (c == ',' || c == '\n') c = ';';
    }
    csv << in.name << ',' << in.mode << ',' << r.graph_vertices << ',' << r.graph_edges << ',' << r.width << ','
        << r.partition_width << ',' << packing << ',' << cover << ',' << r.bound << ',' << margin << ','
        << opt(r.oracle_pack) << ',' << opt(r.oracle_cover) << ',' << opt(r.treewidth) << ',' << code << ',' << error
        << '\n';
  }
  write_file_atomic(options.output / "summary.csv", csv.str());
  out.exit_code = failed ? 1 : (budget ? 2 : 0);
  return out;
}

}  // namespace iep
