#pragma once

// Gap functions, the tree-cut to tree-partition pipeline, the cover
// algorithm on tree-partitions, cover pullback and the end-to-end
// certifiers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iep/decomposition.hpp"
#include "iep/generators.hpp"
#include "iep/immersion.hpp"
#include "iep/multigraph.hpp"

namespace iep {

// r(3r+1) is always even, so no rounding is involved.
inline std::int64_t omega(std::int64_t edges, std::int64_t r) {
  if (r < 0 || edges < 1) throw Error(ErrorKind::kInvalidArgument, "omega needs r >= 0 and |E(H)| >= 1");
  return r * (3 * r + 1) / 2 * edges;
}

inline std::int64_t omega(const Multigraph& h, std::int64_t r) { return omega(static_cast<std::int64_t>(h.num_edges()), r); }

inline std::int64_t sigma(std::int64_t r) {
  if (r < 0) throw Error(ErrorKind::kInvalidArgument, "sigma needs r >= 0");
  const std::int64_t s = r + 1;
  const std::int64_t num = 3 * s * s * s * s + 2 * s * s;
  return (num + 7) / 8;
}

// Largest integer partition width allowed by a tree-cut width of w.
inline std::int64_t partition_radius(std::int64_t w) { return (w + 1) * (w + 1) / 2; }

// ---------------------------------------------------------------------------
// Pipeline

struct BagExtension {
  std::size_t zone = 0;
  int node = -1;
};

struct PipelineMappings {
  StarZoneMap zones;
  std::map<EdgeRef, EdgeRef> to_star;  // G' edge -> G* edge it derives from
  std::vector<BagExtension> extensions;
};

struct PipelineResult {
  Multigraph star;                    // G*
  TreeCutDecomposition extended;      // input decomposition plus gadget bags
  TreeCutDecomposition nice;          // after nice-ification and cleanup
  Multigraph subdivided;              // G'
  TreePartition partition;            // D'
  PipelineMappings maps;
  int input_width = 0;
  int extended_width = 0;
  int nice_width = 0;
  int partition_width = 0;
  std::vector<int> adhesion_before;   // nice decomposition of G*, per node
  std::vector<int> adhesion_after;    // D' on G', per node
};

inline PipelineResult tc_to_tp_pipeline(const Multigraph& g, const TreeCutDecomposition& d) {
  if (g.num_vertices() == 0 || !is_connected(g)) throw Error(ErrorKind::kDisconnected, "pipeline needs a connected graph");
  PipelineResult out;
  out.input_width = validate_tcd(g, d).width;

  StarGraph star = star_graph(g);
  out.star = star.graph;
  out.maps.zones = star.zones;

  out.extended = d;
  auto node = d.node_of();
  for (std::size_t z = 0; z < star.zones.zones.size(); ++z) {
    const Zone& zone = star.zones.zones[z];
    const int child = static_cast<int>(out.extended.size());
    out.extended.parent.push_back(node.at(zone.center));
    out.extended.bags.push_back({zone.first, zone.second});
    out.maps.extensions.push_back(BagExtension{z, child});
  }
  out.extended_width = validate_tcd(out.star, out.extended).width;

  out.nice = drop_empty_ends(make_nice(out.star, out.extended));
  out.nice_width = validate_tcd(out.star, out.nice).width;
  for (std::size_t t = 0; t < out.nice.size(); ++t) out.adhesion_before.push_back(adhesion(out.star, out.nice, static_cast<int>(t)));

  // Each current instance of a pair remembers the G* edge it came from.
  using Pair = std::pair<VertexId, VertexId>;
  std::map<Pair, std::vector<EdgeRef>> origin;
  for (const EdgeRef& e : out.star.edge_instances()) origin[{e.u, e.v}].push_back(e);

  Multigraph work = out.star;
  TreeCutDecomposition dec = out.nice;
  for (;;) {
    auto at = dec.node_of();
    std::map<int, std::vector<Pair>> crossing;
    for (const auto& e : work.multiedges()) {
      for (int t : dec.interior_path(at.at(e.u), at.at(e.v))) crossing[t].push_back({e.u, e.v});
    }
    if (crossing.empty()) break;
    auto& [t, pairs] = *crossing.begin();
    for (const Pair& p : pairs) {
      std::vector<EdgeRef> from = origin.at(p);
      origin.erase(p);
      work.remove_edge(p.first, p.second, static_cast<int>(from.size()));
      for (const EdgeRef& o : from) {
        VertexId s = work.add_vertex();
        work.add_edge(p.first, s);
        work.add_edge(s, p.second);
        origin[{std::min(p.first, s), std::max(p.first, s)}].push_back(o);
        origin[{std::min(p.second, s), std::max(p.second, s)}].push_back(o);
        dec.bags[t].insert(s);
      }
    }
  }
  out.subdivided = work;
  for (const auto& [p, list] : origin) {
    for (std::size_t i = 0; i < list.size(); ++i) out.maps.to_star[EdgeRef{p.first, p.second, static_cast<int>(i) + 1}] = list[i];
  }

  dec = drop_empty_ends(dec);
  out.partition = TreePartition{{dec.parent, dec.bags}};
  try {
    out.partition_width = validate_partition(out.subdivided, out.partition).width;
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvariantViolation, std::string("pipeline produced an invalid tree-partition: ") + e.what());
  }
  for (std::size_t t = 0; t < out.partition.size(); ++t) {
    out.adhesion_after.push_back(adhesion(out.subdivided, out.partition, static_cast<int>(t)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cover algorithm on a tree-partition

struct PartitionCover {
  SearchStatus status = SearchStatus::kFound;  // kBudgetExhausted: result unusable
  std::set<EdgeRef> cover;
  std::vector<ImmersionModel> packing;
  int width = 0;
  std::int64_t omega_value = 0;
  std::vector<int> removal_sizes;
  std::vector<int> infected_nodes;
  bool removal_within_omega = true;
};

// Repeatedly takes an infected node of minimum height (an expansion lives
// in G_t), extracts the expansion M found there, and deletes the edges of
// G[X_t] that M could use together with every edge from X_t to the bags of
// children whose subtrees M meets. Each pair inside X_t contributes at most
// |E(H)| instances, the ones M uses first.
inline PartitionCover cover_from_partition(const Multigraph& g, const Multigraph& h, const TreePartition& d,
                                           SearchBudget& budget, ModelMode mode = ModelMode::kImmersion) {
  detail::require_pattern(h);
  PartitionCover out;
  out.width = validate_partition(g, d).width;
  out.omega_value = omega(h, out.width);

  using Pair = std::pair<VertexId, VertexId>;
  std::map<Pair, std::vector<int>> alive;  // working instance i -> original index alive[p][i-1]
  for (const auto& e : g.multiedges()) {
    for (int i = 1; i <= e.mult; ++i) alive[{e.u, e.v}].push_back(i);
  }
  Multigraph work = g;
  auto kids = d.children();
  auto height = d.heights();
  std::vector<int> order(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) order[t] = static_cast<int>(t);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return height[a] < height[b]; });
  std::vector<std::set<VertexId>> below(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) below[t] = d.subtree_vertices(static_cast<int>(t));
  std::vector<char> clean(d.size(), 0);
  const int per_pair = static_cast<int>(h.num_edges());

  for (;;) {
    int infected = -1;
    ImmersionModel m;
    for (int t : order) {
      if (clean[t]) continue;
      auto r = find_expansion(induced_subgraph(work, below[t]), h, mode, budget);
      if (r.status == SearchStatus::kBudgetExhausted) {
        out.status = SearchStatus::kBudgetExhausted;
        return out;
      }
      if (r.status == SearchStatus::kNoneExists) {
        clean[t] = 1;
        continue;
      }
      infected = t;
      m = *r.model;
      break;
    }
    if (infected < 0) break;
    out.infected_nodes.push_back(infected);

    std::map<Pair, std::set<int>> used;  // working indices used by M
    for (const auto& [he, path] : m.psi) {
      for (const auto& e : path) used[{e.u, e.v}].insert(e.index);
    }
    Expansion ex = expansion_of(m);
    const auto& bag = d.bags[infected];

    std::map<Pair, std::set<int>> removal;
    for (const auto& e : work.multiedges()) {
      const Pair p{e.u, e.v};
      if (bag.count(e.u) && bag.count(e.v)) {
        std::set<int>& take = removal[p];
        for (int i : used[p]) take.insert(i);
        for (int i = 1; i <= e.mult && static_cast<int>(take.size()) < std::min(e.mult, per_pair); ++i) take.insert(i);
      }
    }
    for (int c : kids[infected]) {
      bool meets = false;
      for (VertexId v : ex.vertices) {
        if (below[c].count(v)) {
          meets = true;
          break;
        }
      }
      if (!meets) continue;
      for (const auto& e : work.multiedges()) {
        const bool forward = bag.count(e.u) && d.bags[c].count(e.v);
        const bool backward = bag.count(e.v) && d.bags[c].count(e.u);
        if (!forward && !backward) continue;
        for (int i = 1; i <= e.mult; ++i) removal[{e.u, e.v}].insert(i);
      }
    }

    // Record M and the removal set by original instance numbers.
    ImmersionModel original = m;
    for (auto& [he, path] : original.psi) {
      for (auto& e : path) e.index = alive.at({e.u, e.v}).at(e.index - 1);
    }
    out.packing.push_back(std::move(original));
    int size = 0;
    for (auto& [p, idx] : removal) {
      if (idx.empty()) continue;
      auto& list = alive.at(p);
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        out.cover.insert(EdgeRef{p.first, p.second, list.at(*it - 1)});
        list.erase(list.begin() + (*it - 1));
        ++size;
      }
      work.remove_edge(p.first, p.second, static_cast<int>(idx.size()));
    }
    out.removal_sizes.push_back(size);
    if (size > out.omega_value) out.removal_within_omega = false;
  }

  auto last = find_expansion(work, h, mode, budget);
  if (last.status == SearchStatus::kBudgetExhausted) {
    out.status = SearchStatus::kBudgetExhausted;
    return out;
  }
  if (last.status == SearchStatus::kFound) {
    throw Error(ErrorKind::kInvariantViolation, "expansion survives although every node is clean");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pullback

// G' edges to their G* edges (duplicates collapse).
inline std::set<EdgeRef> cover_to_star(const std::set<EdgeRef>& cover, const PipelineMappings& maps) {
  std::set<EdgeRef> out;
  for (const EdgeRef& e : cover) {
    auto it = maps.to_star.find(e);
    if (it == maps.to_star.end()) throw Error(ErrorKind::kUnknownEdge, "edge " + to_string(e) + " is not in the subdivided graph");
    out.insert(it->second);
  }
  return out;
}

// G* edges to G edges: original edges stay, an edge of a zone Z_{v,i}
// becomes every edge of G at v.
inline std::set<EdgeRef> star_cover_to_graph(const std::set<EdgeRef>& cover, const StarZoneMap& zones, const Multigraph& g) {
  std::set<EdgeRef> out;
  for (const EdgeRef& e : cover) {
    if (zones.is_original_edge(e)) {
      if (!g.has_edge(e)) throw Error(ErrorKind::kUnknownEdge, "edge " + to_string(e) + " is not in the original graph");
      out.insert(e);
      continue;
    }
    auto z = zones.zone_of_edge(e);
    if (!z) throw Error(ErrorKind::kUnknownEdge, "edge " + to_string(e) + " is neither original nor in a zone");
    VertexId v = zones.zones.at(*z).center;
    for (const auto& [w, m] : g.neighbors(v)) {
      for (int i = 1; i <= m; ++i) out.insert(make_edge(v, w, i));
    }
  }
  return out;
}

inline std::set<EdgeRef> pullback_cover(const std::set<EdgeRef>& cover, const PipelineMappings& maps, const Multigraph& g) {
  return star_cover_to_graph(cover_to_star(cover, maps), maps.zones, g);
}

// Drops cover edges one at a time (ascending) while the rest still covers.
inline std::optional<std::set<EdgeRef>> minimalize_cover(const Multigraph& g, const Multigraph& h, std::set<EdgeRef> cover,
                                                         ModelMode mode, SearchBudget& budget) {
  for (auto it = cover.begin(); it != cover.end();) {
    std::set<EdgeRef> rest = cover;
    rest.erase(*it);
    auto r = find_expansion(without_edges(g, rest), h, mode, budget);
    if (r.status == SearchStatus::kBudgetExhausted) return std::nullopt;
    if (r.status == SearchStatus::kNoneExists) {
      it = cover.erase(it);
    } else {
      ++it;
    }
  }
  return cover;
}

// ---------------------------------------------------------------------------
// Certification

enum class CheckStatus { kPass, kFail, kBudget, kSkipped };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kBudget: return "budget-exhausted";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "skipped";
}

struct Check {
  CheckStatus status = CheckStatus::kSkipped;
  std::string detail;
};

struct ComponentReport {
  std::vector<VertexId> vertices;
  std::string decomposition_source;  // supplied, exact or heuristic
  int tree_cut_width = 0;
  int nice_width = 0;
  int partition_width = 0;
  std::size_t subdivided_vertices = 0;
  std::int64_t omega_value = 0;       // omega_{H+}(partition width)
  std::int64_t sigma_value = 0;       // sigma(tree-cut width)
  std::int64_t bound = 0;             // sigma * (4|V(H)| + |E(H)|) * |packing|
  std::size_t cover_on_subdivided = 0;
  std::size_t cover_on_star = 0;
  std::size_t cover_size = 0;
  std::size_t packing_size = 0;
};

struct EPReport {
  static constexpr int kSchemaVersion = 1;

  std::string instance;
  std::string mode = "edge";
  std::size_t graph_vertices = 0;
  std::size_t graph_edges = 0;
  std::size_t pattern_vertices = 0;
  std::size_t pattern_edges = 0;
  bool subcubic = false;
  bool planar_asserted = false;
  bool hypothesis_checked = false;

  std::vector<ComponentReport> components;
  std::vector<ImmersionModel> packing;         // H+ models in the subdivided graphs (edge mode)
  std::set<EdgeRef> cover;                     // edge mode
  std::set<VertexId> vertex_cover;             // vertex mode
  std::vector<ImmersionModel> oracle_packing;  // H models in G from exhaustive search
  int width = 0;
  int partition_width = 0;
  std::int64_t sigma_value = 0;
  std::int64_t bound = 0;

  std::optional<int> oracle_pack;
  std::optional<int> oracle_cover;
  std::optional<int> treewidth;
  std::map<std::string, Check> checks;
  bool budget_exhausted = false;

  bool any(CheckStatus s) const {
    for (const auto& [name, c] : checks) {
      if (c.status == s) return true;
    }
    return false;
  }

  // 0 all verified, 1 a verified inequality failed, 2 budget ran out.
  int exit_code() const {
    if (any(CheckStatus::kFail)) return 1;
    if (budget_exhausted || any(CheckStatus::kBudget)) return 2;
    return 0;
  }
};

struct CertifyOptions {
  std::optional<TreeCutDecomposition> decomposition;
  std::uint64_t budget = SearchBudget::kUnlimited;
  int exact_cap = kDefaultExactCap;
  bool planar_asserted = false;
  bool oracles = true;          // exhaustive pack_H(G) and cover_H(G)
  bool lemma_oracles = false;   // exhaustive H+ packing/cover on G' and G*
  bool sabotage_drop_cover_edge = false;  // test hook: corrupt the cover before verification
};

namespace detail {

inline TreeCutDecomposition restrict_decomposition(const TreeCutDecomposition& d, const std::set<VertexId>& keep) {
  TreeCutDecomposition out = d;
  for (auto& bag : out.bags) {
    std::set<VertexId> kept;
    for (VertexId v : bag) {
      if (keep.count(v)) kept.insert(v);
    }
    bag = std::move(kept);
  }
  return drop_empty_ends(out);
}

inline Check budget_check(const std::string& what) { return Check{CheckStatus::kBudget, what + ": search budget exhausted"}; }

inline void record(EPReport& r, const std::string& name, bool ok, const std::string& detail) {
  r.checks[name] = Check{ok ? CheckStatus::kPass : CheckStatus::kFail, detail};
}

}  // namespace detail

inline bool is_subcubic(const Multigraph& h) { return max_mdeg(h) <= 3; }

inline EPReport ep_edge_certify(const Multigraph& g, const Multigraph& h, const CertifyOptions& options = {}) {
  detail::require_pattern(h);
  SearchBudget budget(options.budget);
  EPReport r;
  r.mode = "edge";
  r.graph_vertices = g.num_vertices();
  r.graph_edges = g.num_edges();
  r.pattern_vertices = h.num_vertices();
  r.pattern_edges = h.num_edges();
  r.subcubic = is_subcubic(h);
  r.planar_asserted = options.planar_asserted;
  r.hypothesis_checked = r.subcubic && r.planar_asserted;
  if (options.decomposition) validate_tcd(g, *options.decomposition);

  const PlusGraph plus = plus_graph(h);
  const std::int64_t factor = static_cast<std::int64_t>(4 * h.num_vertices() + h.num_edges());
  bool sigma_ok = true;
  bool chain_ok = true;
  bool omega_ok = true;
  bool lemma_pack_ok = true;
  bool lemma_cover_ok = true;
  bool lemma_budget = false;
  std::string sigma_detail;

  for (const auto& comp : connected_components(g)) {
    if (comp.size() < 2) continue;
    const std::set<VertexId> keep(comp.begin(), comp.end());
    const Multigraph part = induced_subgraph(g, keep);
    ComponentReport c;
    c.vertices = comp;

    TreeCutDecomposition dec;
    if (options.decomposition) {
      dec = detail::restrict_decomposition(*options.decomposition, keep);
      c.decomposition_source = "supplied";
    } else if (static_cast<int>(part.num_vertices()) <= options.exact_cap) {
      try {
        dec = exact_tcw_small(part, budget, options.exact_cap).decomposition;
        c.decomposition_source = "exact";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kBudgetExhausted) throw;
        r.budget_exhausted = true;
        dec = heuristic_tcd(part);
        c.decomposition_source = "heuristic";
      }
    } else {
      dec = heuristic_tcd(part);
      c.decomposition_source = "heuristic";
    }
    c.tree_cut_width = validate_tcd(part, dec).width;

    PipelineResult pipe = tc_to_tp_pipeline(part, dec);
    c.nice_width = pipe.nice_width;
    c.partition_width = pipe.partition_width;
    c.subdivided_vertices = pipe.subdivided.num_vertices();

    PartitionCover run = cover_from_partition(pipe.subdivided, plus.graph, pipe.partition, budget);
    if (run.status == SearchStatus::kBudgetExhausted) {
      r.budget_exhausted = true;
      r.checks["cover_algorithm"] = detail::budget_check("cover algorithm");
      r.components.push_back(c);
      continue;
    }
    omega_ok = omega_ok && run.removal_within_omega;
    c.omega_value = run.omega_value;
    c.cover_on_subdivided = run.cover.size();
    c.packing_size = run.packing.size();

    std::set<EdgeRef> star_cover = cover_to_star(run.cover, pipe.maps);
    auto minimal = minimalize_cover(pipe.star, plus.graph, star_cover, ModelMode::kImmersion, budget);
    if (!minimal) {
      r.budget_exhausted = true;
      r.checks["cover_pullback"] = detail::budget_check("cover minimalization");
      r.components.push_back(c);
      continue;
    }
    c.cover_on_star = minimal->size();
    std::set<EdgeRef> pulled = star_cover_to_graph(*minimal, pipe.maps.zones, part);
    c.cover_size = pulled.size();
    c.sigma_value = sigma(c.tree_cut_width);
    c.bound = c.sigma_value * factor * static_cast<std::int64_t>(c.packing_size);
    if (static_cast<std::int64_t>(c.cover_size) > c.bound) {
      sigma_ok = false;
      sigma_detail = "component with " + std::to_string(comp.size()) + " vertices: cover " + std::to_string(c.cover_size) +
                     " > bound " + std::to_string(c.bound);
    }
    if (c.cover_size > c.cover_on_subdivided) chain_ok = false;

    if (options.lemma_oracles) {
      // pack_{H+}(G') <= pack_H(G) and cover_H(G) <= cover_{H+}(G*)
      auto pack_plus = max_packing(pipe.subdivided, plus.graph, ModelMode::kImmersion, Disjointness::kEdge, budget,
                                   static_cast<int>(run.cover.size()));
      auto pack_h = max_packing(part, h, ModelMode::kImmersion, Disjointness::kEdge, budget);
      auto cover_plus = min_cover(pipe.star, plus.graph, ModelMode::kImmersion, Disjointness::kEdge, budget);
      auto cover_h = min_cover(part, h, ModelMode::kImmersion, Disjointness::kEdge, budget);
      if (pack_plus.budget_exhausted || pack_h.budget_exhausted || cover_plus.status != SearchStatus::kFound ||
          cover_h.status != SearchStatus::kFound) {
        lemma_budget = true;
      } else {
        lemma_pack_ok = lemma_pack_ok && pack_plus.models.size() <= pack_h.models.size();
        lemma_cover_ok = lemma_cover_ok && cover_h.size() <= cover_plus.size();
      }
    }

    r.packing.insert(r.packing.end(), run.packing.begin(), run.packing.end());
    r.cover.insert(pulled.begin(), pulled.end());
    r.width = std::max(r.width, c.tree_cut_width);
    r.partition_width = std::max(r.partition_width, c.partition_width);
    r.components.push_back(c);
  }
  r.sigma_value = sigma(r.width);
  r.bound = r.sigma_value * factor * static_cast<std::int64_t>(r.packing.size());

  if (options.sabotage_drop_cover_edge && !r.cover.empty()) r.cover.erase(r.cover.begin());

  if (!r.checks.count("cover_algorithm") && !r.checks.count("cover_pullback")) {
    auto left = find_expansion(without_edges(g, r.cover), h, ModelMode::kImmersion, budget);
    if (left.status == SearchStatus::kBudgetExhausted) {
      r.checks["cover_valid"] = detail::budget_check("cover verification");
    } else {
      detail::record(r, "cover_valid", left.status == SearchStatus::kNoneExists,
                     left.status == SearchStatus::kNoneExists ? "no H-immersion survives the cover"
                                                              : "an H-immersion survives the cover");
    }
    detail::record(r, "sigma_bound", sigma_ok, sigma_ok ? "cover <= sigma(w)(4|V(H)|+|E(H)|) packing" : sigma_detail);
    detail::record(r, "removal_within_omega", omega_ok, "every removal set within omega_{H+}(partition width)");
    detail::record(r, "pullback_not_larger", chain_ok, "pulled-back cover no larger than the cover on G'");
  }

  if (options.oracles) {
    auto cover = min_cover(g, h, ModelMode::kImmersion, Disjointness::kEdge, budget);
    std::optional<int> hint;
    if (cover.status == SearchStatus::kFound) hint = static_cast<int>(cover.size());
    auto pack = max_packing(g, h, ModelMode::kImmersion, Disjointness::kEdge, budget, hint);
    if (pack.budget_exhausted || cover.status != SearchStatus::kFound) {
      r.checks["oracle_duality"] = detail::budget_check("exhaustive packing/cover");
    } else {
      r.oracle_packing = pack.models;
      r.oracle_pack = static_cast<int>(pack.models.size());
      r.oracle_cover = static_cast<int>(cover.size());
      const bool ok = *r.oracle_pack <= *r.oracle_cover && *r.oracle_cover <= static_cast<int>(r.cover.size());
      detail::record(r, "oracle_duality", ok, "pack_H(G) <= cover_H(G) <= |cover|");
    }
  }
  if (options.lemma_oracles) {
    if (lemma_budget) {
      r.checks["lemma_pack"] = detail::budget_check("lemma oracles");
      r.checks["lemma_cover"] = detail::budget_check("lemma oracles");
    } else {
      detail::record(r, "lemma_pack", lemma_pack_ok, "pack_{H+}(G') <= pack_H(G)");
      detail::record(r, "lemma_cover", lemma_cover_ok, "cover_H(G) <= cover_{H+}(G*)");
    }
  }

  bool disjoint = true;
  std::set<EdgeRef> seen;
  for (const auto& m : r.oracle_packing) {
    for (const auto& e : expansion_of(m).edges) disjoint = seen.insert(e).second && disjoint;
  }
  if (!r.oracle_packing.empty()) detail::record(r, "oracle_packing_disjoint", disjoint, "oracle packing is edge-disjoint");
  return r;
}

inline EPReport ep_vertex_report(const Multigraph& g, const Multigraph& h, std::uint64_t budget_nodes = SearchBudget::kUnlimited,
                                 int treewidth_cap = kDefaultTreewidthCap) {
  detail::require_pattern(h);
  SearchBudget budget(budget_nodes);
  EPReport r;
  r.mode = "vertex";
  r.graph_vertices = g.num_vertices();
  r.graph_edges = g.num_edges();
  r.pattern_vertices = h.num_vertices();
  r.pattern_edges = h.num_edges();
  r.subcubic = is_subcubic(h);

  auto cover = min_cover(g, h, ModelMode::kImmersion, Disjointness::kVertex, budget);
  std::optional<int> hint;
  if (cover.status == SearchStatus::kFound) hint = static_cast<int>(cover.size());
  auto pack = max_packing(g, h, ModelMode::kImmersion, Disjointness::kVertex, budget, hint);
  if (static_cast<int>(g.num_vertices()) <= treewidth_cap) r.treewidth = exact_treewidth_small(g, treewidth_cap);

  if (cover.status != SearchStatus::kFound || pack.budget_exhausted) {
    r.budget_exhausted = true;
    r.checks["vertex_duality"] = detail::budget_check("vertex packing/cover");
    return r;
  }
  r.vertex_cover = cover.vertices;
  r.oracle_packing = pack.models;
  r.oracle_pack = static_cast<int>(pack.models.size());
  r.oracle_cover = static_cast<int>(cover.size());
  detail::record(r, "vertex_duality", *r.oracle_pack <= *r.oracle_cover, "vertex pack <= vertex cover");

  bool disjoint = true;
  std::set<VertexId> seen;
  for (const auto& m : pack.models) {
    for (VertexId v : expansion_of(m).vertices) disjoint = seen.insert(v).second && disjoint;
  }
  detail::record(r, "packing_disjoint", disjoint, "vertex packing is vertex-disjoint");
  return r;
}

// ---------------------------------------------------------------------------
// Packing in a large wall from disjoint sub-walls

struct WallPacking {
  SubwallTiling tiling;
  ImmersionModel tile_model;
  std::vector<ImmersionModel> models;  // one per tile, in the host wall
};

// Finds H in wall(h) and copies the model into every tile of
// disjoint_subwalls(h, k); there are at least k+1 tiles.
inline WallPacking wall_packing_witness(const Multigraph& pattern, int h, int k, SearchBudget& budget) {
  WallPacking out;
  out.tiling = disjoint_subwalls(h, k);
  auto found = find_expansion(out.tiling.tile.graph, pattern, ModelMode::kImmersion, budget);
  if (found.status == SearchStatus::kBudgetExhausted) throw Error(ErrorKind::kBudgetExhausted, "wall packing search");
  if (found.status == SearchStatus::kNoneExists) throw Error(ErrorKind::kInfeasible, "pattern is not an immersion of the tile wall");
  out.tile_model = *found.model;
  for (const auto& sub : out.tiling.subwalls) {
    ImmersionModel m;
    m.mode = out.tile_model.mode;
    for (const auto& [x, v] : out.tile_model.phi) m.phi[x] = sub.embedding.at(v);
    for (const auto& [he, path] : out.tile_model.psi) {
      std::vector<EdgeRef> mapped;
      for (const auto& e : path) mapped.push_back(make_edge(sub.embedding.at(e.u), sub.embedding.at(e.v), e.index));
      m.psi[he] = std::move(mapped);
    }
    out.models.push_back(std::move(m));
  }
  return out;
}

}  // namespace iep
