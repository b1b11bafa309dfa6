// iep: command-line front end for the immersion / packing-covering library.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iep/iep.hpp"

namespace {

using iep::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

struct Globals {
  std::uint64_t budget = iep::SearchBudget::kUnlimited;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool quiet = false;
  bool no_timestamp = false;
};

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw iep::Error(iep::ErrorKind::kParseError, "cannot open " + path);
  return read_all(in);
}

iep::Multigraph load_graph(const std::string& path) { return iep::parse_graph(read_text(path)); }

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    throw iep::Error(iep::ErrorKind::kParseError, path + ": " + e.what());
  }
}

Json graph_to_json(const iep::Multigraph& g) {
  Json vs = Json::array();
  for (auto v : g.vertices()) vs.push_back(v.value);
  Json es = Json::array();
  for (const auto& e : g.multiedges()) es.push_back(Json::array({e.u.value, e.v.value, e.mult}));
  return Json{{"schema", "iep.graph"}, {"version", iep::kJsonVersion}, {"vertices", vs}, {"edges", es}};
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void emit_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    iep::write_file_atomic(path, text);
  }
}

std::string bags_dot(const iep::RootedBags& d) {
  std::ostringstream out;
  out << "graph T {\n";
  for (std::size_t t = 0; t < d.size(); ++t) {
    out << "  t" << t << " [label=\"" << t << ": {";
    bool first = true;
    for (auto v : d.bags[t]) {
      out << (first ? "" : ",") << v.value;
      first = false;
    }
    out << "}\"];\n";
    if (d.parent[t] >= 0) out << "  t" << d.parent[t] << " -- t" << t << ";\n";
  }
  out << "}\n";
  return out.str();
}

// Supplied file, else exact when the graph is small, else heuristic.
struct ChosenTcd {
  iep::TreeCutDecomposition decomposition;
  std::string source;
};

ChosenTcd choose_tcd(const iep::Multigraph& g, const std::string& decomp_path, bool exact, bool heuristic, int cap,
                     iep::SearchBudget& budget) {
  if (!decomp_path.empty()) return {iep::tcd_from_json(load_json(decomp_path), g), "supplied"};
  const bool small = static_cast<int>(g.num_vertices()) <= cap;
  if (exact || (!heuristic && small)) {
    if (!small) {
      throw iep::Error(iep::ErrorKind::kTooLarge, "exact tree-cut width is limited to " + std::to_string(cap) + " vertices");
    }
    return {iep::exact_tcw_small(g, budget, cap).decomposition, "exact"};
  }
  return {iep::heuristic_tcd(g), "heuristic"};
}

int status_code(iep::SearchStatus s) { return s == iep::SearchStatus::kBudgetExhausted ? kExitBudget : kExitOk; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph immersions, tree-cut decompositions and packing/covering certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  Globals opt;
  if (const char* env = std::getenv("IMMERSION_EP_BUDGET")) {
    try {
      opt.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: IMMERSION_EP_BUDGET must be a node count\n";
      return kExitInput;
    }
  }
  app.add_option("--budget", opt.budget, "Search node budget (default: unlimited or $IMMERSION_EP_BUDGET)");
  app.add_option("--seed", opt.seed, "Seed for random families");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "dot", "json"}));
  app.add_flag("--quiet,-q", opt.quiet, "Suppress progress messages on stderr");
  app.add_flag("--no-timestamp", opt.no_timestamp, "Omit timestamps from reports");

  std::function<int()> action;
  auto note = [&](const std::string& msg) {
    if (!opt.quiet) std::cerr << msg << "\n";
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph family");
  std::string family;
  std::vector<int> params;
  std::string coords_path;
  gen->add_option("family", family, "theta|path|cycle|star|complete|grid|wall|wallplus|random|random-connected")->required();
  gen->add_option("params", params, "Family parameters");
  gen->add_option("--coords", coords_path, "Write the coordinate map as JSON");
  gen->callback([&] {
    action = [&] {
      auto out = iep::generate(family, params, opt.seed);
      if (!coords_path.empty()) {
        if (!out.coords) throw iep::Error(iep::ErrorKind::kInvalidArgument, "family '" + family + "' has no coordinates");
        iep::write_file_atomic(coords_path, out.coords->dump(2) + "\n");
      }
      if (opt.format == "json") {
        emit_json(graph_to_json(out.graph));
      } else if (opt.format == "dot") {
        std::cout << iep::to_dot(out.graph, family);
      } else {
        std::cout << iep::serialize_graph(out.graph);
      }
      return kExitOk;
    };
  });

  // find / pack / cover share their inputs
  std::string g_path, h_path, mode_text = "immersion", disjoint_text = "edge";
  auto add_search_inputs = [&](CLI::App* sub) {
    sub->add_option("--G", g_path, "Host graph file")->required();
    sub->add_option("--H", h_path, "Pattern graph file")->required();
    sub->add_option("--mode", mode_text, "immersion|strong|topological");
  };
  auto disjointness = [&] {
    if (disjoint_text == "edge") return iep::Disjointness::kEdge;
    if (disjoint_text == "vertex") return iep::Disjointness::kVertex;
    throw iep::Error(iep::ErrorKind::kInvalidArgument, "--disjoint must be edge or vertex");
  };

  auto* find = app.add_subcommand("find", "Find one expansion of H in G");
  add_search_inputs(find);
  find->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto h = load_graph(h_path);
      iep::SearchBudget budget(opt.budget);
      auto r = iep::find_expansion(g, h, iep::parse_mode(mode_text), budget);
      Json j{{"status", std::string(iep::to_string(r.status))}, {"nodes", budget.spent}};
      j["model"] = r.model ? iep::model_to_json(*r.model) : Json(nullptr);
      if (opt.format == "json") {
        emit_json(j);
      } else {
        std::cout << iep::to_string(r.status) << "\n";
        if (r.model) std::cout << iep::model_to_json(*r.model).dump(2) << "\n";
      }
      return status_code(r.status);
    };
  });

  auto* pack = app.add_subcommand("pack", "Maximum packing of disjoint expansions");
  add_search_inputs(pack);
  pack->add_option("--disjoint", disjoint_text, "edge|vertex");
  pack->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto h = load_graph(h_path);
      iep::SearchBudget budget(opt.budget);
      auto r = iep::max_packing(g, h, iep::parse_mode(mode_text), disjointness(), budget);
      Json models = Json::array();
      for (const auto& m : r.models) models.push_back(iep::model_to_json(m));
      Json j{{"exact", r.exact}, {"budget_exhausted", r.budget_exhausted}, {"size", r.models.size()}, {"models", models}};
      if (opt.format == "json") {
        emit_json(j);
      } else {
        std::cout << "packing " << r.models.size() << (r.exact ? " (exact)" : " (lower bound)") << "\n";
      }
      return r.budget_exhausted ? kExitBudget : kExitOk;
    };
  });

  auto* cover = app.add_subcommand("cover", "Minimum cover hitting every expansion");
  add_search_inputs(cover);
  cover->add_option("--disjoint", disjoint_text, "edge|vertex");
  cover->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto h = load_graph(h_path);
      iep::SearchBudget budget(opt.budget);
      auto r = iep::min_cover(g, h, iep::parse_mode(mode_text), disjointness(), budget);
      Json edges = Json::array();
      for (const auto& e : r.edges) edges.push_back(iep::edge_to_json(e));
      Json vertices = Json::array();
      for (auto v : r.vertices) vertices.push_back(v.value);
      Json j{{"status", std::string(iep::to_string(r.status))}, {"size", r.size()}, {"edges", edges}, {"vertices", vertices}};
      if (opt.format == "json") {
        emit_json(j);
      } else if (r.status == iep::SearchStatus::kBudgetExhausted) {
        std::cout << "cover: budget exhausted\n";
      } else {
        std::cout << "cover " << r.size() << "\n";
        for (const auto& e : r.edges) std::cout << "  " << e << "\n";
        for (auto v : r.vertices) std::cout << "  " << v << "\n";
      }
      return status_code(r.status);
    };
  });

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Tree-cut, tree-partition or tree decomposition width");
  std::string width_kind, graph_file;
  bool exact = false, heuristic = false;
  int cap = iep::kDefaultExactCap;
  decompose->add_option("kind", width_kind, "tcw|tpw|tw")->required()->check(CLI::IsMember({"tcw", "tpw", "tw"}));
  decompose->add_option("graph", graph_file, "Graph file (default: stdin)");
  auto* exact_flag = decompose->add_flag("--exact", exact, "Exact search (small graphs only)");
  decompose->add_flag("--heuristic", heuristic, "Fast heuristic decomposition")->excludes(exact_flag);
  decompose->add_option("--cap", cap, "Vertex limit for exact search");
  decompose->callback([&] {
    action = [&] {
      auto g = load_graph(graph_file);
      iep::SearchBudget budget(opt.budget);
      if (width_kind == "tw") {
        if (heuristic) throw iep::Error(iep::ErrorKind::kInvalidArgument, "treewidth is exact only");
        const int tw_cap = std::max(cap, iep::kDefaultTreewidthCap);
        int tw = iep::exact_treewidth_small(g, tw_cap);
        if (opt.format == "json") {
          emit_json(Json{{"kind", "treewidth"}, {"width", tw}});
        } else {
          std::cout << "treewidth " << tw << "\n";
        }
        return kExitOk;
      }
      if (width_kind == "tpw") {
        if (heuristic) throw iep::Error(iep::ErrorKind::kInvalidArgument, "tree-partition width is exact only");
        auto r = iep::exact_tpw_small(g, budget, cap);
        if (opt.format == "dot") {
          std::cout << bags_dot(r.partition);
        } else {
          emit_json(iep::decomposition_to_json(g, r.partition));
        }
        return kExitOk;
      }
      auto chosen = choose_tcd(g, "", exact, heuristic, cap, budget);
      note("tree-cut decomposition: " + chosen.source);
      if (opt.format == "dot") {
        std::cout << bags_dot(chosen.decomposition);
      } else {
        emit_json(iep::decomposition_to_json(g, chosen.decomposition));
      }
      return kExitOk;
    };
  });

  // nice
  std::string decomp_path;
  auto* nice = app.add_subcommand("nice", "Make a tree-cut decomposition nice");
  nice->add_option("--G", g_path, "Graph file")->required();
  nice->add_option("--decomp", decomp_path, "Tree-cut decomposition JSON")->required();
  nice->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto d = iep::tcd_from_json(load_json(decomp_path), g);
      auto out = iep::make_nice(g, d);
      if (opt.format == "dot") {
        std::cout << bags_dot(out);
      } else {
        emit_json(iep::decomposition_to_json(g, out));
      }
      return kExitOk;
    };
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Tree-cut decomposition to tree-partition of the subdivided star graph");
  pipeline->add_option("--G", g_path, "Connected graph file")->required();
  pipeline->add_option("--decomp", decomp_path, "Tree-cut decomposition JSON (default: exact or heuristic)");
  pipeline->add_option("--cap", cap, "Vertex limit for exact search");
  pipeline->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      iep::SearchBudget budget(opt.budget);
      auto chosen = choose_tcd(g, decomp_path, false, false, cap, budget);
      auto r = iep::tc_to_tp_pipeline(g, chosen.decomposition);
      Json j{{"schema", "iep.pipeline"},
             {"version", iep::kJsonVersion},
             {"decomposition", chosen.source},
             {"input_width", r.input_width},
             {"extended_width", r.extended_width},
             {"nice_width", r.nice_width},
             {"partition_width", r.partition_width},
             {"radius_bound", iep::partition_radius(r.input_width)},
             {"star", graph_to_json(r.star)},
             {"subdivided", graph_to_json(r.subdivided)},
             {"nice", iep::decomposition_to_json(r.star, r.nice)},
             {"partition", iep::decomposition_to_json(r.subdivided, r.partition)}};
      if (opt.format == "json") {
        emit_json(j);
      } else {
        std::cout << "tree-cut width " << r.input_width << " (" << chosen.source << "), nice " << r.nice_width
                  << ", partition " << r.partition_width << " <= " << iep::partition_radius(r.input_width) << "\n";
      }
      return kExitOk;
    };
  });

  // certify
  auto* certify = app.add_subcommand("certify", "Run the cover algorithm and verify its bounds");
  std::string certify_mode = "edge", out_path;
  bool planar = false, no_oracles = false, lemma_oracles = false;
  certify->add_option("--G", g_path, "Host graph file")->required();
  certify->add_option("--H", h_path, "Pattern graph file")->required();
  certify->add_option("--decomp", decomp_path, "Tree-cut decomposition JSON for a connected G");
  certify->add_option("--mode", certify_mode, "edge|vertex")->check(CLI::IsMember({"edge", "vertex"}));
  certify->add_option("--cap", cap, "Vertex limit for exact decompositions");
  certify->add_option("--out", out_path, "Report file (default: stdout)");
  certify->add_flag("--planar", planar, "Assert that H is planar");
  certify->add_flag("--no-oracles", no_oracles, "Skip exhaustive packing/cover oracles");
  certify->add_flag("--lemma-oracles", lemma_oracles, "Also run oracles on the gadget graphs");
  certify->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto h = load_graph(h_path);
      iep::EPReport r;
      if (certify_mode == "edge") {
        iep::CertifyOptions co;
        co.budget = opt.budget;
        co.exact_cap = cap;
        co.planar_asserted = planar;
        co.oracles = !no_oracles;
        co.lemma_oracles = lemma_oracles;
        if (!decomp_path.empty()) co.decomposition = iep::tcd_from_json(load_json(decomp_path), g);
        r = iep::ep_edge_certify(g, h, co);
      } else {
        r = iep::ep_vertex_report(g, h, opt.budget);
      }
      r.instance = g_path;
      Json j = iep::ep_report_to_json(r);
      if (!opt.no_timestamp) j["generated_at"] = timestamp();
      if (opt.format == "json" || !out_path.empty()) {
        emit_to(out_path, j.dump(2) + "\n");
      }
      if (opt.format != "json") {
        std::ostream& os = out_path.empty() ? std::cout : std::cerr;
        if (r.mode == "edge") {
          os << "cover " << r.cover.size() << ", packing " << r.packing.size() << ", bound " << r.bound << "\n";
        } else {
          os << "vertex cover " << r.vertex_cover.size() << ", vertex packing " << r.oracle_packing.size() << "\n";
        }
        for (const auto& [name, c] : r.checks) os << "  " << name << ": " << iep::to_string(c.status) << "  " << c.detail << "\n";
      }
      return r.exit_code();
    };
  });

  // suite
  auto* suite = app.add_subcommand("suite", "Experiment suites");
  suite->require_subcommand(1);
  suite->fallthrough();
  auto* suite_run = suite->add_subcommand("run", "Run every instance of a suite file");
  std::string suite_path, suite_out = "suite-out";
  bool sabotage = false;
  suite_run->add_option("spec", suite_path, "Suite JSON")->required();
  suite_run->add_option("--out", suite_out, "Output directory");
  suite_run->add_flag("--sabotage-drop-cover-edge", sabotage)->group("");
  suite_run->callback([&] {
    action = [&] {
      auto spec = iep::suite_from_json(load_json(suite_path), std::filesystem::path(suite_path).parent_path());
      iep::SuiteOptions so;
      so.output = suite_out;
      so.sabotage_drop_cover_edge = sabotage;
      if (opt.budget != iep::SearchBudget::kUnlimited) so.default_budget = opt.budget;
      auto r = iep::run_suite(spec, so);
      if (opt.format == "json") {
        Json rows = Json::array();
        for (std::size_t i = 0; i < r.names.size(); ++i) rows.push_back(Json{{"name", r.names[i]}, {"exit", r.codes[i]}});
        emit_json(Json{{"exit_code", r.exit_code}, {"instances", rows}});
      } else if (!opt.quiet) {
        for (std::size_t i = 0; i < r.names.size(); ++i) std::cout << r.names[i] << " " << r.codes[i] << "\n";
      }
      return r.exit_code;
    };
  });

  // validate
  auto* validate = app.add_subcommand("validate", "Check a graph, model or decomposition file");
  validate->require_subcommand(1);
  validate->fallthrough();
  auto* vgraph = validate->add_subcommand("graph", "Parse a graph file");
  vgraph->add_option("graph", graph_file, "Graph file (default: stdin)");
  vgraph->callback([&] {
    action = [&] {
      auto g = load_graph(graph_file);
      Json j{{"valid", true},
             {"vertices", g.num_vertices()},
             {"edges", g.num_edges()},
             {"connected", iep::is_connected(g)},
             {"max_multiplicity", iep::max_multiplicity(g)}};
      if (opt.format == "json") {
        emit_json(j);
      } else {
        std::cout << "valid graph: " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
      }
      return kExitOk;
    };
  });
  auto* vmodel = validate->add_subcommand("model", "Check an immersion model");
  std::string model_path;
  vmodel->add_option("--G", g_path, "Host graph file")->required();
  vmodel->add_option("--H", h_path, "Pattern graph file")->required();
  vmodel->add_option("--model", model_path, "Model JSON")->required();
  vmodel->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      auto h = load_graph(h_path);
      auto m = iep::model_from_json(load_json(model_path));
      auto r = iep::validate_model(g, h, m);
      if (opt.format == "json") {
        emit_json(iep::report_to_json(r));
      } else {
        std::cout << (r.valid ? "valid" : "invalid") << " (" << iep::to_string(m.mode) << ")\n";
        if (!r.witness.empty()) std::cout << "  witness: " << r.witness << "\n";
        for (const auto& v : r.violations) std::cout << "  " << v << "\n";
      }
      return r.valid ? kExitOk : kExitViolation;
    };
  });
  auto* vdecomp = validate->add_subcommand("decomp", "Check a decomposition and recompute its width");
  vdecomp->add_option("--G", g_path, "Graph file")->required();
  vdecomp->add_option("--decomp", decomp_path, "Decomposition JSON")->required();
  vdecomp->callback([&] {
    action = [&] {
      auto g = load_graph(g_path);
      Json dj = load_json(decomp_path);
      const std::string kind = iep::decomposition_kind(dj);
      Json j{{"kind", kind}};
      try {
        iep::WidthReport w;
        if (kind == "tree-partition") {
          w = iep::validate_partition(g, iep::partition_from_json(dj, g));
        } else {
          auto d = iep::tcd_from_json(dj, g);
          w = iep::validate_tcd(g, d);
          j["nice"] = iep::is_nice(g, d);
        }
        j["valid"] = true;
        j["width"] = w.width;
      } catch (const iep::Error& e) {
        if (e.kind() != iep::ErrorKind::kInvalidDecomposition) throw;
        j["valid"] = false;
        j["error"] = e.what();
      }
      if (opt.format == "json") {
        emit_json(j);
      } else if (j["valid"].get<bool>()) {
        std::cout << "valid " << kind << " decomposition, width " << j["width"] << "\n";
      } else {
        std::cout << "invalid " << kind << " decomposition: " << j["error"].get<std::string>() << "\n";
      }
      return j["valid"].get<bool>() ? kExitOk : kExitViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (!action) return kExitInput;

  try {
    return action();
  } catch (const iep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case iep::ErrorKind::kBudgetExhausted:
      case iep::ErrorKind::kIterationBudgetExceeded:
        return kExitBudget;
      case iep::ErrorKind::kInvariantViolation:
        return kExitViolation;
      default:
        return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
