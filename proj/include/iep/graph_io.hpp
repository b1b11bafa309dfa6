#pragma once

// Text format, one graph per file:
//
//   c optional comment lines
//   p mgraph <n> <m-distinct>
//   e <u> <v> <mult>
//
// Vertices are the integers 1..n. The writer emits multiedges sorted
// lexicographically; graphs whose ids are not exactly 1..n are renumbered in
// ascending id order first.

#include <istream>
#include <sstream>
#include <string>

#include "iep/multigraph.hpp"

namespace iep {

inline Multigraph parse_graph(std::istream& in) {
  Multigraph g;
  bool have_header = false;
  long n = 0;
  long declared = 0;
  long seen = 0;
  std::set<std::pair<long, long>> pairs;
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kParseError, "line " + std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (have_header) fail("duplicate header");
      if (!(ls >> kind >> n >> declared) || kind != "mgraph") fail("expected 'p mgraph <n> <m>'");
      if (n < 0 || declared < 0) fail("negative size in header");
      for (long i = 1; i <= n; ++i) g.add_vertex(VertexId{static_cast<std::uint32_t>(i)});
      have_header = true;
    } else if (tag == "e") {
      long u = 0, v = 0, m = 0;
      if (!have_header) fail("edge before header");
      if (!(ls >> u >> v >> m)) fail("expected 'e <u> <v> <mult>'");
      if (u < 1 || v < 1 || u > n || v > n) fail("vertex out of range");
      if (u == v) fail("loop at vertex " + std::to_string(u));
      if (m < 1) fail("multiplicity must be positive");
      if (!pairs.insert({std::min(u, v), std::max(u, v)}).second) fail("repeated multiedge");
      g.add_edge(VertexId{static_cast<std::uint32_t>(u)}, VertexId{static_cast<std::uint32_t>(v)},
                 static_cast<int>(m));
      ++seen;
    } else {
      fail("unknown line tag '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing input");
  }
  if (!have_header) {
    lineno = 0;
    fail("missing header");
  }
  if (seen != declared) {
    throw Error(ErrorKind::kParseError, "header declares " + std::to_string(declared) + " multiedges, found " +
                                            std::to_string(seen));
  }
  return g;
}

inline Multigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline bool has_standard_ids(const Multigraph& g) {
  std::uint32_t expect = 1;
  for (VertexId v : g.vertices()) {
    if (v.value != expect++) return false;
  }
  return true;
}

inline std::string serialize_graph(const Multigraph& graph) {
  const Multigraph g = has_standard_ids(graph) ? graph : compacted(graph);
  std::ostringstream out;
  auto edges = g.multiedges();
  out << "p mgraph " << g.num_vertices() << " " << edges.size() << "\n";
  for (const auto& e : edges) out << "e " << e.u << " " << e.v << " " << e.mult << "\n";
  return out.str();
}

// Parallel edges are written out one line per instance.
inline std::string to_dot(const Multigraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (VertexId v : g.vertices()) out << "  " << v << ";\n";
  for (const auto& e : g.multiedges()) {
    for (int i = 0; i < e.mult; ++i) out << "  " << e.u << " -- " << e.v << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace iep
