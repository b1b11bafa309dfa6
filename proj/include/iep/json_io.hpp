#pragma once

// JSON forms of models, decompositions, reports and coordinate maps.

#include <string>

#include <json.hpp>

#include "iep/decomposition.hpp"
#include "iep/ep_engine.hpp"
#include "iep/generators.hpp"
#include "iep/immersion.hpp"

namespace iep {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonVersion = 1;

inline Json edge_to_json(const EdgeRef& e) { return Json::array({e.u.value, e.v.value, e.index}); }

inline EdgeRef edge_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::kParseError, "edge must be [u, v, index]");
  auto u = j.at(0).get<std::uint32_t>();
  auto v = j.at(1).get<std::uint32_t>();
  auto i = j.at(2).get<int>();
  if (u == v) throw Error(ErrorKind::kParseError, "edge is a loop");
  return make_edge(VertexId{u}, VertexId{v}, i);
}

inline Json model_to_json(const ImmersionModel& m) {
  Json j;
  j["schema"] = "iep.model";
  j["version"] = kJsonVersion;
  j["mode"] = std::string(to_string(m.mode));
  Json phi = Json::object();
  for (const auto& [h, g] : m.phi) phi[std::to_string(h.value)] = g.value;
  j["phi"] = phi;
  Json psi = Json::array();
  for (const auto& [he, path] : m.psi) {
    Json p = Json::array();
    for (const auto& e : path) p.push_back(edge_to_json(e));
    psi.push_back(Json{{"edge", edge_to_json(he)}, {"path", p}});
  }
  j["psi"] = psi;
  return j;
}

inline ImmersionModel model_from_json(const Json& j) {
  try {
    ImmersionModel m;
    m.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& [key, value] : j.at("phi").items()) {
      m.phi[VertexId{static_cast<std::uint32_t>(std::stoul(key))}] = VertexId{value.get<std::uint32_t>()};
    }
    for (const auto& item : j.at("psi")) {
      std::vector<EdgeRef> path;
      for (const auto& e : item.at("path")) path.push_back(edge_from_json(e));
      m.psi[edge_from_json(item.at("edge"))] = std::move(path);
    }
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("model JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::kParseError, "model JSON: phi keys must be vertex ids");
  }
}

inline Json report_to_json(const ValidityReport& r) {
  return Json{{"valid", r.valid},
              {"immersion", r.immersion_ok},
              {"strong_immersion", r.strong_ok},
              {"topological_minor", r.topological_ok},
              {"witness", r.witness},
              {"violations", r.violations}};
}

inline Json bags_to_json(const RootedBags& d) {
  Json bags = Json::array();
  for (const auto& bag : d.bags) {
    Json b = Json::array();
    for (VertexId v : bag) b.push_back(v.value);
    bags.push_back(b);
  }
  return bags;
}

inline Json decomposition_to_json(const Multigraph& g, const TreeCutDecomposition& d) {
  return Json{{"schema", "iep.decomposition"}, {"version", kJsonVersion}, {"kind", "tree-cut"},
              {"parent", d.parent},           {"bags", bags_to_json(d)},   {"width", validate_tcd(g, d).width}};
}

inline Json decomposition_to_json(const Multigraph& g, const TreePartition& d) {
  return Json{{"schema", "iep.decomposition"}, {"version", kJsonVersion}, {"kind", "tree-partition"},
              {"parent", d.parent},           {"bags", bags_to_json(d)},   {"width", validate_partition(g, d).width}};
}

namespace detail {

inline RootedBags bags_from_json(const Json& j, const std::string& kind) {
  try {
    if (j.at("kind").get<std::string>() != kind) {
      throw Error(ErrorKind::kInvalidDecomposition, "expected a " + kind + " decomposition");
    }
    RootedBags d;
    d.parent = j.at("parent").get<std::vector<int>>();
    for (const auto& bag : j.at("bags")) {
      std::set<VertexId> b;
      for (const auto& v : bag) b.insert(VertexId{v.get<std::uint32_t>()});
      d.bags.push_back(std::move(b));
    }
    return d;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("decomposition JSON: ") + e.what());
  }
}

inline void check_stored_width(const Json& j, int width) {
  if (!j.contains("width")) return;
  if (j.at("width").get<int>() != width) {
    throw Error(ErrorKind::kInvalidDecomposition, "stored width " + std::to_string(j.at("width").get<int>()) +
                                                      " differs from recomputed width " + std::to_string(width));
  }
}

}  // namespace detail

inline std::string decomposition_kind(const Json& j) { return j.value("kind", std::string("tree-cut")); }

// The stored width, when present, must equal the recomputed one.
inline TreeCutDecomposition tcd_from_json(const Json& j, const Multigraph& g) {
  TreeCutDecomposition d{detail::bags_from_json(j, "tree-cut")};
  detail::check_stored_width(j, validate_tcd(g, d).width);
  return d;
}

inline TreePartition partition_from_json(const Json& j, const Multigraph& g) {
  TreePartition d{detail::bags_from_json(j, "tree-partition")};
  detail::check_stored_width(j, validate_partition(g, d).width);
  return d;
}

inline Json coords_to_json(const Coordinates& c) {
  Json list = Json::array();
  for (const auto& [v, at] : c.of) list.push_back(Json{{"id", v.value}, {"row", at.x}, {"col", at.y}});
  return Json{{"schema", "iep.coords"}, {"version", kJsonVersion}, {"coords", list}};
}

inline Json wall_coords_to_json(const Wall& w) {
  Json j = coords_to_json(w.coords);
  auto paths = [](const std::vector<std::vector<VertexId>>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) {
      Json q = Json::array();
      for (VertexId v : p) q.push_back(v.value);
      out.push_back(q);
    }
    return out;
  };
  j["vertical_paths"] = paths(w.vertical_paths);
  j["horizontal_paths"] = paths(w.horizontal_paths);
  return j;
}

inline Json check_to_json(const Check& c) { return Json{{"status", std::string(to_string(c.status))}, {"detail", c.detail}}; }

inline Json ep_report_to_json(const EPReport& r) {
  Json j;
  j["schema"] = "iep.ep-report";
  j["version"] = EPReport::kSchemaVersion;
  j["instance"] = r.instance;
  j["mode"] = r.mode;
  j["graph"] = Json{{"vertices", r.graph_vertices}, {"edges", r.graph_edges}};
  j["pattern"] = Json{{"vertices", r.pattern_vertices},
                      {"edges", r.pattern_edges},
                      {"subcubic", r.subcubic},
                      {"planar_asserted", r.planar_asserted},
                      {"hypothesis_checked", r.hypothesis_checked}};
  j["width"] = r.width;
  j["partition_width"] = r.partition_width;
  j["sigma"] = r.sigma_value;
  j["bound"] = r.bound;
  if (r.treewidth) j["treewidth"] = *r.treewidth;
  Json cover = Json::array();
  for (const auto& e : r.cover) cover.push_back(edge_to_json(e));
  j["cover"] = cover;
  Json vcover = Json::array();
  for (VertexId v : r.vertex_cover) vcover.push_back(v.value);
  j["vertex_cover"] = vcover;
  Json packing = Json::array();
  for (const auto& m : r.packing) packing.push_back(model_to_json(m));
  j["packing"] = packing;
  Json oracle = Json::array();
  for (const auto& m : r.oracle_packing) oracle.push_back(model_to_json(m));
  j["oracle_packing"] = oracle;
  j["oracle_pack"] = r.oracle_pack ? Json(*r.oracle_pack) : Json(nullptr);
  j["oracle_cover"] = r.oracle_cover ? Json(*r.oracle_cover) : Json(nullptr);
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json vs = Json::array();
    for (VertexId v : c.vertices) vs.push_back(v.value);
    comps.push_back(Json{{"vertices", vs},
                         {"decomposition", c.decomposition_source},
                         {"tree_cut_width", c.tree_cut_width},
                         {"nice_width", c.nice_width},
                         {"partition_width", c.partition_width},
                         {"subdivided_vertices", c.subdivided_vertices},
                         {"omega", c.omega_value},
                         {"sigma", c.sigma_value},
                         {"bound", c.bound},
                         {"cover_on_subdivided", c.cover_on_subdivided},
                         {"cover_on_star", c.cover_on_star},
                         {"cover", c.cover_size},
                         {"packing", c.packing_size}});
  }
  j["components"] = comps;
  Json checks = Json::object();
  for (const auto& [name, c] : r.checks) checks[name] = check_to_json(c);
  j["checks"] = checks;
  j["budget_exhausted"] = r.budget_exhausted;
  j["exit_code"] = r.exit_code();
  return j;
}

}  // namespace iep
