#pragma once

// Immersion, strong-immersion and topological-minor models: validation,
// exhaustive search, exact packing/covering by search, and the explicit
// grid model inside an enriched wall.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iep/generators.hpp"
#include "iep/multigraph.hpp"

namespace iep {

enum class ModelMode { kImmersion, kStrongImmersion, kTopologicalMinor };
enum class Disjointness { kEdge, kVertex };

inline std::string_view to_string(ModelMode mode) {
  switch (mode) {
    case ModelMode::kImmersion: return "immersion";
    case ModelMode::kStrongImmersion: return "strong-immersion";
    case ModelMode::kTopologicalMinor: return "topological-minor";
  }
  return "immersion";
}

inline ModelMode parse_mode(std::string_view text) {
  if (text == "immersion") return ModelMode::kImmersion;
  if (text == "strong-immersion" || text == "strong") return ModelMode::kStrongImmersion;
  if (text == "topological-minor" || text == "topological") return ModelMode::kTopologicalMinor;
  throw Error(ErrorKind::kInvalidArgument, "unknown model mode '" + std::string(text) + "'");
}

inline std::string_view to_string(Disjointness d) { return d == Disjointness::kEdge ? "edge" : "vertex"; }

// phi: V(H) -> V(G); psi: each H edge instance {u,v}_i -> a path of G
// instances, listed from phi(u) to phi(v) (u < v as stored in the EdgeRef).
struct ImmersionModel {
  ModelMode mode = ModelMode::kImmersion;
  std::map<VertexId, VertexId> phi;
  std::map<EdgeRef, std::vector<EdgeRef>> psi;

  bool operator==(const ImmersionModel&) const = default;
};

struct Expansion {
  std::set<VertexId> vertices;
  std::set<EdgeRef> edges;
};

// Vertex sequence of a path given as edge instances, walked from `start`.
// Returns nullopt if consecutive edges do not chain.
inline std::optional<std::vector<VertexId>> walk_path(VertexId start, const std::vector<EdgeRef>& path) {
  std::vector<VertexId> seq{start};
  for (const auto& e : path) {
    if (!e.touches(seq.back())) return std::nullopt;
    seq.push_back(e.other(seq.back()));
  }
  return seq;
}

inline Expansion expansion_of(const ImmersionModel& m) {
  Expansion out;
  for (const auto& [h, g] : m.phi) out.vertices.insert(g);
  for (const auto& [he, path] : m.psi) {
    for (const auto& e : path) {
      out.vertices.insert(e.u);
      out.vertices.insert(e.v);
      out.edges.insert(e);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidityReport {
  bool valid = false;             // for the model's own mode
  bool immersion_ok = false;      // injective, paths, edge-disjoint, multidegree bound
  bool strong_ok = false;         // additionally no internal branch vertex
  bool topological_ok = false;    // additionally internally vertex-disjoint
  std::string witness;            // first violation relevant to the model's mode
  std::vector<std::string> violations;
};

inline ValidityReport validate_model(const Multigraph& g, const Multigraph& h, const ImmersionModel& m) {
  for (const auto& [hv, gv] : m.phi) {
    if (!h.has_vertex(hv)) throw Error(ErrorKind::kMalformedModel, "phi maps absent H vertex " + to_string(hv));
    if (!g.has_vertex(gv)) throw Error(ErrorKind::kMalformedModel, "phi targets absent G vertex " + to_string(gv));
  }
  for (const auto& [he, path] : m.psi) {
    if (!h.has_edge(he)) throw Error(ErrorKind::kMalformedModel, "psi maps absent H edge " + to_string(he));
    for (const auto& e : path) {
      if (!g.has_edge(e)) throw Error(ErrorKind::kMalformedModel, "path uses absent G edge " + to_string(e));
    }
  }

  std::vector<std::string> basic;
  std::vector<std::string> strong;
  std::vector<std::string> topo;

  std::map<VertexId, VertexId> owner;  // G vertex -> H vertex
  for (VertexId hv : h.vertices()) {
    auto it = m.phi.find(hv);
    if (it == m.phi.end()) {
      basic.push_back("H vertex " + to_string(hv) + " has no branch vertex");
      continue;
    }
    auto [pos, fresh] = owner.emplace(it->second, hv);
    if (!fresh) {
      basic.push_back("phi not injective: H vertices " + to_string(pos->second) + " and " + to_string(hv) + " both map to " +
                      to_string(it->second));
    }
    if (h.mdeg(hv) > g.mdeg(it->second)) {
      basic.push_back("multidegree bound fails at branch vertex " + to_string(it->second));
    }
  }

  std::map<EdgeRef, EdgeRef> edge_user;        // G edge -> H edge using it
  std::map<VertexId, EdgeRef> internal_user;   // G vertex -> H edge with it internal
  for (const EdgeRef& he : h.edge_instances()) {
    auto it = m.psi.find(he);
    if (it == m.psi.end()) {
      basic.push_back("H edge " + to_string(he) + " has no certifying path");
      continue;
    }
    auto pu = m.phi.find(he.u);
    auto pv = m.phi.find(he.v);
    if (pu == m.phi.end() || pv == m.phi.end()) continue;
    const auto& path = it->second;
    if (path.empty()) {
      basic.push_back("certifying path of " + to_string(he) + " is empty");
      continue;
    }
    auto seq = walk_path(pu->second, path);
    if (!seq || seq->back() != pv->second) {
      auto rev = walk_path(pv->second, path);
      if (rev && rev->back() == pu->second) {
        seq = rev;
      } else {
        basic.push_back("path of " + to_string(he) + " does not join its branch vertices");
        continue;
      }
    }
    std::set<VertexId> distinct(seq->begin(), seq->end());
    if (distinct.size() != seq->size()) basic.push_back("path of " + to_string(he) + " repeats a vertex");
    for (const auto& e : path) {
      auto [pos, fresh] = edge_user.emplace(e, he);
      if (!fresh) {
        basic.push_back("edge " + to_string(e) + " used by both " + to_string(pos->second) + " and " + to_string(he));
      }
    }
    for (std::size_t i = 1; i + 1 < seq->size(); ++i) {
      VertexId x = (*seq)[i];
      if (owner.count(x)) {
        strong.push_back("branch vertex " + to_string(x) + " is internal to the path of " + to_string(he));
      }
      auto [pos, fresh] = internal_user.emplace(x, he);
      if (!fresh) {
        topo.push_back("vertex " + to_string(x) + " is internal to both " + to_string(pos->second) + " and " + to_string(he));
      }
    }
  }
  for (const auto& [he, path] : m.psi) {
    if (!m.phi.count(he.u) || !m.phi.count(he.v)) basic.push_back("psi references H edge with unmapped endpoint");
  }

  ValidityReport r;
  r.immersion_ok = basic.empty();
  r.strong_ok = r.immersion_ok && strong.empty();
  r.topological_ok = r.strong_ok && topo.empty();
  switch (m.mode) {
    case ModelMode::kImmersion: r.valid = r.immersion_ok; break;
    case ModelMode::kStrongImmersion: r.valid = r.strong_ok; break;
    case ModelMode::kTopologicalMinor: r.valid = r.topological_ok; break;
  }
  r.violations = basic;
  if (m.mode != ModelMode::kImmersion) r.violations.insert(r.violations.end(), strong.begin(), strong.end());
  if (m.mode == ModelMode::kTopologicalMinor) r.violations.insert(r.violations.end(), topo.begin(), topo.end());
  if (!r.violations.empty()) r.witness = r.violations.front();
  return r;
}

// Restriction of a model to a subgraph of H (vertex subset and edge
// instances of the subgraph are looked up by id).
inline ImmersionModel restrict_model(const ImmersionModel& m, const Multigraph& sub) {
  ImmersionModel out;
  out.mode = m.mode;
  for (VertexId v : sub.vertices()) out.phi[v] = m.phi.at(v);
  for (const EdgeRef& e : sub.edge_instances()) out.psi[e] = m.psi.at(e);
  return out;
}

// ---------------------------------------------------------------------------
// Search

struct SearchBudget {
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  std::uint64_t limit = kUnlimited;
  std::uint64_t spent = 0;

  SearchBudget() = default;
  explicit SearchBudget(std::uint64_t nodes) : limit(nodes) {}

  bool unlimited() const { return limit == kUnlimited; }
  bool exhausted() const { return spent >= limit; }
};

enum class SearchStatus { kFound, kNoneExists, kBudgetExhausted };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kNoneExists: return "none";
    case SearchStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "none";
}

struct FindResult {
  SearchStatus status = SearchStatus::kNoneExists;
  std::optional<ImmersionModel> model;
};

namespace detail {

struct BudgetOut {};

struct DenseGraph {
  std::vector<VertexId> ids;
  std::map<VertexId, int> index;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, pair)
  std::vector<std::pair<int, int>> ends;
  std::vector<int> mult;
  std::vector<int> mdeg;

  explicit DenseGraph(const Multigraph& g) {
    ids = g.vertices();
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<int>(i);
    adj.resize(ids.size());
    mdeg.assign(ids.size(), 0);
    for (const auto& e : g.multiedges()) {
      int a = index.at(e.u);
      int b = index.at(e.v);
      int pid = static_cast<int>(mult.size());
      ends.emplace_back(a, b);
      mult.push_back(e.mult);
      adj[a].emplace_back(b, pid);
      adj[b].emplace_back(a, pid);
      mdeg[a] += e.mult;
      mdeg[b] += e.mult;
    }
  }

  int size() const { return static_cast<int>(ids.size()); }
};

// `copies` disjoint copies of H laid out copy after copy; within a copy the
// assignment order starts at a vertex of largest multidegree and then always
// takes the vertex most attached to those already placed.
struct Pattern {
  int copies = 1;
  int per_copy = 0;
  std::vector<VertexId> h_ids;
  std::vector<std::pair<int, int>> edges;  // local endpoints, one entry per instance
  std::vector<EdgeRef> edge_refs;
  std::vector<int> mdeg;
  std::vector<int> order;                  // local vertices in assignment order
  std::vector<std::vector<int>> pending;   // per order position: edges to earlier vertices
  std::vector<int> anchor;                 // per order position: earlier neighbor or -1
  std::vector<int> twin_before;            // per local vertex: earlier twin or -1

  Pattern(const Multigraph& h, int copy_count, bool break_symmetry) : copies(copy_count) {
    h_ids = h.vertices();
    per_copy = static_cast<int>(h_ids.size());
    std::map<VertexId, int> local;
    for (int i = 0; i < per_copy; ++i) local[h_ids[i]] = i;
    mdeg.assign(per_copy, 0);
    std::vector<std::vector<int>> m(per_copy, std::vector<int>(per_copy, 0));
    for (const EdgeRef& e : h.edge_instances()) {
      int a = local.at(e.u);
      int b = local.at(e.v);
      edges.emplace_back(a, b);
      edge_refs.push_back(e);
      ++mdeg[a];
      ++mdeg[b];
      ++m[a][b];
      ++m[b][a];
    }

    std::vector<char> placed(per_copy, 0);
    std::vector<int> attach(per_copy, 0);
    for (int step = 0; step < per_copy; ++step) {
      int best = -1;
      for (int v = 0; v < per_copy; ++v) {
        if (placed[v]) continue;
        if (best < 0 || attach[v] > attach[best] || (attach[v] == attach[best] && mdeg[v] > mdeg[best])) best = v;
      }
      placed[best] = 1;
      order.push_back(best);
      for (int w = 0; w < per_copy; ++w) attach[w] += m[best][w];
    }

    std::vector<int> position(per_copy);
    for (int i = 0; i < per_copy; ++i) position[order[i]] = i;
    pending.resize(per_copy);
    anchor.assign(per_copy, -1);
    for (int i = 0; i < per_copy; ++i) {
      int v = order[i];
      int best_anchor = -1;
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [a, b] = edges[e];
        int other = a == v ? b : (b == v ? a : -1);
        if (other < 0 || position[other] >= i) continue;
        pending[i].push_back(e);
        if (best_anchor < 0 || m[v][other] > m[v][best_anchor]) best_anchor = other;
      }
      anchor[i] = best_anchor;
    }

    twin_before.assign(per_copy, -1);
    if (break_symmetry) {
      for (int i = 0; i < per_copy; ++i) {
        int v = order[i];
        for (int j = i - 1; j >= 0; --j) {
          int u = order[j];
          bool twins = true;
          for (int c = 0; c < per_copy && twins; ++c) {
            if (c != u && c != v && m[u][c] != m[v][c]) twins = false;
          }
          if (twins) {
            twin_before[v] = u;
            break;
          }
        }
      }
    }
  }

  int total() const { return copies * per_copy; }
};

class Searcher {
 public:
  using Visitor = std::function<bool(const std::vector<ImmersionModel>&)>;

  Searcher(const DenseGraph& g, const Pattern& p, ModelMode mode, Disjointness disjointness, SearchBudget& budget)
      : g_(g), p_(p), mode_(mode), disjoint_(disjointness), budget_(budget) {}

  // Depth-first search with every certifying path limited to `length_bound`
  // edges. Returns true when the visitor asked to stop (or, without a
  // visitor, when one solution was found).
  bool run(int length_bound, const Visitor* visitor) {
    reset();
    bound_ = length_bound;
    visitor_ = visitor;
    return assign(0);
  }

  bool length_cut() const { return length_cut_; }
  const std::vector<ImmersionModel>& solution() const { return solution_; }

 private:
  static constexpr int kFar = std::numeric_limits<int>::max() / 4;

  void reset() {
    const int n = g_.size();
    const int total = p_.total();
    phi_.assign(total, -1);
    remaining_.assign(total, 0);
    for (int c = 0; c < p_.copies; ++c) {
      for (int v = 0; v < p_.per_copy; ++v) remaining_[c * p_.per_copy + v] = p_.mdeg[v];
    }
    used_.assign(g_.mult.size(), 0);
    residual_ = g_.mdeg;
    demand_.assign(n, 0);
    branch_.assign(static_cast<std::size_t>(p_.copies) * n, 0);
    internal_.assign(static_cast<std::size_t>(p_.copies) * n, 0);
    owner_.assign(n, -1);
    owner_refs_.assign(n, 0);
    on_path_.assign(n, 0);
    paths_.assign(static_cast<std::size_t>(p_.copies) * p_.edges.size(), {});
    length_cut_ = false;
    solution_.clear();
  }

  void charge() {
    if (++budget_.spent > budget_.limit) throw BudgetOut{};
  }

  bool strong() const { return mode_ != ModelMode::kImmersion; }
  bool topo() const { return mode_ == ModelMode::kTopologicalMinor; }

  bool allowed_internal(int w, int copy) const {
    const std::size_t k = static_cast<std::size_t>(copy) * g_.size() + w;
    if (strong() && branch_[k]) return false;
    if (topo() && internal_[k]) return false;
    if (disjoint_ == Disjointness::kVertex && owner_[w] != -1 && owner_[w] != copy) return false;
    return true;
  }

  void claim(int w, int copy) {
    if (disjoint_ != Disjointness::kVertex) return;
    owner_[w] = copy;
    ++owner_refs_[w];
  }
  void release(int w) {
    if (disjoint_ != Disjointness::kVertex) return;
    if (--owner_refs_[w] == 0) owner_[w] = -1;
  }

  // Residual-graph distances to `target`, passing only through vertices the
  // current copy may use internally.
  std::vector<int> distances_to(int target, int copy) const {
    std::vector<int> dist(g_.size(), kFar);
    std::vector<int> queue{target};
    dist[target] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      if (v != target && !allowed_internal(v, copy)) continue;
      for (const auto& [w, pid] : g_.adj[v]) {
        if (used_[pid] >= g_.mult[pid] || dist[w] != kFar) continue;
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
    return dist;
  }

  bool assign(int pos) {
    if (pos == p_.total()) return emit();
    charge();
    const int copy = pos / p_.per_copy;
    const int step = pos % p_.per_copy;
    const int local = p_.order[step];
    const int x = copy * p_.per_copy + local;
    const int need = p_.mdeg[local];
    const int n = g_.size();

    std::vector<int> candidates;
    if (p_.anchor[step] >= 0) {
      int from = phi_[copy * p_.per_copy + p_.anchor[step]];
      std::vector<int> dist = distances_to(from, copy);
      for (int v = 0; v < n; ++v) {
        if (v == from || dist[v] == kFar) continue;
        if (dist[v] > bound_) {
          length_cut_ = true;
          continue;
        }
        candidates.push_back(v);
      }
      std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    } else {
      for (int v = 0; v < n; ++v) candidates.push_back(v);
    }

    int lower = -1;
    if (p_.twin_before[local] >= 0) lower = std::max(lower, phi_[copy * p_.per_copy + p_.twin_before[local]] + 1);
    if (step == 0 && copy > 0) {
      int prev = phi_[(copy - 1) * p_.per_copy + p_.order[0]];
      lower = std::max(lower, disjoint_ == Disjointness::kVertex ? prev + 1 : prev);
    }

    for (int v : candidates) {
      const std::size_t k = static_cast<std::size_t>(copy) * n + v;
      if (v < lower || g_.mdeg[v] < need || residual_[v] - demand_[v] < need || branch_[k]) continue;
      if (strong() && internal_[k]) continue;
      if (disjoint_ == Disjointness::kVertex && owner_[v] != -1 && owner_[v] != copy) continue;

      phi_[x] = v;
      branch_[k] = 1;
      demand_[v] += need;
      claim(v, copy);
      if (route(pos, 0)) return true;
      release(v);
      demand_[v] -= need;
      branch_[k] = 0;
      phi_[x] = -1;
    }
    return false;
  }

  bool route(int pos, std::size_t k) {
    const int step = pos % p_.per_copy;
    const auto& pending = p_.pending[step];
    if (k == pending.size()) return assign(pos + 1);
    const int copy = pos / p_.per_copy;
    const int edge = pending[k];
    auto [a, b] = p_.edges[edge];
    const int local = p_.order[step];
    const int other = a == local ? b : a;
    const int source = phi_[copy * p_.per_copy + local];
    const int target = phi_[copy * p_.per_copy + other];

    std::vector<int> dist = distances_to(target, copy);
    if (dist[source] == kFar) return false;
    if (dist[source] > bound_) {
      length_cut_ = true;
      return false;
    }
    Frame frame{pos, k, copy, copy * p_.per_copy + local, copy * p_.per_copy + other, edge, target, &dist};
    std::vector<int> vertices{source};
    std::vector<int> pairs;
    on_path_[source] = 1;
    bool done = extend(frame, vertices, pairs);
    on_path_[source] = 0;
    return done;
  }

  struct Frame {
    int pos;
    std::size_t k;
    int copy;
    int from_vertex;
    int to_vertex;
    int edge;
    int target;
    const std::vector<int>* dist;
  };

  bool extend(const Frame& f, std::vector<int>& vertices, std::vector<int>& pairs) {
    charge();
    const int v = vertices.back();
    const int depth = static_cast<int>(pairs.size());
    const auto& dist = *f.dist;

    std::vector<std::pair<int, int>> moves;
    for (const auto& [w, pid] : g_.adj[v]) {
      if (used_[pid] >= g_.mult[pid] || on_path_[w] || dist[w] == kFar) continue;
      if (w != f.target) {
        if (!allowed_internal(w, f.copy)) continue;
        if (residual_[w] - 2 < demand_[w]) continue;
      }
      if (depth + 1 + dist[w] > bound_) {
        length_cut_ = true;
        continue;
      }
      moves.emplace_back(w, pid);
    }
    std::stable_sort(moves.begin(), moves.end(), [&](const auto& l, const auto& r) { return dist[l.first] < dist[r.first]; });

    for (const auto& [w, pid] : moves) {
      ++used_[pid];
      --residual_[v];
      --residual_[w];
      vertices.push_back(w);
      pairs.push_back(pid);
      bool done = false;
      if (w == f.target) {
        done = finish_path(f, vertices, pairs);
      } else {
        on_path_[w] = 1;
        done = extend(f, vertices, pairs);
        on_path_[w] = 0;
      }
      vertices.pop_back();
      pairs.pop_back();
      ++residual_[v];
      ++residual_[w];
      --used_[pid];
      if (done) return true;
    }
    return false;
  }

  bool finish_path(const Frame& f, const std::vector<int>& vertices, const std::vector<int>& pairs) {
    const int n = g_.size();
    for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
      ++internal_[static_cast<std::size_t>(f.copy) * n + vertices[i]];
      claim(vertices[i], f.copy);
    }
    --remaining_[f.from_vertex];
    --remaining_[f.to_vertex];
    --demand_[vertices.front()];
    --demand_[vertices.back()];
    auto& slot = paths_[static_cast<std::size_t>(f.copy) * p_.edges.size() + f.edge];
    slot = {vertices, pairs};

    // The nested route starts with a clean path mask; the target was never
    // marked by extend(), so it is not restored.
    for (int v : vertices) on_path_[v] = 0;
    bool done = route(f.pos, f.k + 1);
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) on_path_[vertices[i]] = 1;

    slot = {};
    ++demand_[vertices.front()];
    ++demand_[vertices.back()];
    ++remaining_[f.from_vertex];
    ++remaining_[f.to_vertex];
    for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
      --internal_[static_cast<std::size_t>(f.copy) * n + vertices[i]];
      release(vertices[i]);
    }
    return done;
  }

  bool emit() {
    std::vector<ImmersionModel> models(p_.copies);
    std::vector<int> next_index(g_.mult.size(), 0);
    for (int c = 0; c < p_.copies; ++c) {
      ImmersionModel& m = models[c];
      m.mode = mode_;
      for (int v = 0; v < p_.per_copy; ++v) m.phi[p_.h_ids[v]] = g_.ids[phi_[c * p_.per_copy + v]];
      for (std::size_t e = 0; e < p_.edges.size(); ++e) {
        const auto& [verts, pairs] = paths_[static_cast<std::size_t>(c) * p_.edges.size() + e];
        std::vector<EdgeRef> path;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          path.push_back(make_edge(g_.ids[verts[i]], g_.ids[verts[i + 1]], ++next_index[pairs[i]]));
        }
        // Stored from phi(u) to phi(v) with u < v.
        const EdgeRef& he = p_.edge_refs[e];
        if (m.phi.at(he.u) != g_.ids[verts.front()]) std::reverse(path.begin(), path.end());
        m.psi[he] = std::move(path);
      }
    }
    if (visitor_ == nullptr) {
      solution_ = std::move(models);
      return true;
    }
    return (*visitor_)(models);
  }

  const DenseGraph& g_;
  const Pattern& p_;
  ModelMode mode_;
  Disjointness disjoint_;
  SearchBudget& budget_;
  const Visitor* visitor_ = nullptr;
  int bound_ = 0;
  bool length_cut_ = false;

  std::vector<int> phi_;
  std::vector<int> remaining_;
  std::vector<int> used_;
  std::vector<int> residual_;
  std::vector<int> demand_;
  std::vector<char> branch_;
  std::vector<int> internal_;
  std::vector<int> owner_;
  std::vector<int> owner_refs_;
  std::vector<char> on_path_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> paths_;
  std::vector<ImmersionModel> solution_;
};

struct EngineResult {
  SearchStatus status = SearchStatus::kNoneExists;
  std::vector<ImmersionModel> models;
};

// Iterative deepening on the certifying-path length bound; a level that
// finishes without the bound ever cutting a branch is already exhaustive.
inline EngineResult run_engine(const Multigraph& g, const Multigraph& h, int copies, ModelMode mode,
                               Disjointness disjointness, SearchBudget& budget) {
  EngineResult out;
  if (copies <= 0) {
    out.status = SearchStatus::kFound;
    return out;
  }
  if (h.num_vertices() == 0 || g.num_vertices() == 0) {
    out.status = h.num_vertices() == 0 ? SearchStatus::kFound : SearchStatus::kNoneExists;
    if (out.status == SearchStatus::kFound) out.models.assign(copies, ImmersionModel{mode, {}, {}});
    return out;
  }
  DenseGraph dense(g);
  Pattern pattern(h, copies, true);
  Searcher searcher(dense, pattern, mode, disjointness, budget);
  const int longest = std::max(1, dense.size() - 1);
  try {
    for (int bound = 1;; bound = std::min(longest, std::max(bound + 1, bound * 3 / 2))) {
      if (searcher.run(bound, nullptr)) {
        out.status = SearchStatus::kFound;
        out.models = searcher.solution();
        return out;
      }
      if (!searcher.length_cut() || bound >= longest) break;
    }
  } catch (const BudgetOut&) {
    out.status = SearchStatus::kBudgetExhausted;
    return out;
  }
  out.status = SearchStatus::kNoneExists;
  return out;
}

inline void require_pattern(const Multigraph& h) {
  if (h.num_edges() == 0) throw Error(ErrorKind::kInvalidArgument, "pattern graph needs at least one edge");
  if (!is_connected(h)) throw Error(ErrorKind::kInvalidArgument, "pattern graph must be connected");
}

}  // namespace detail

// Exact when the budget is unlimited: kNoneExists is a proof of absence.
inline FindResult find_expansion(const Multigraph& g, const Multigraph& h, ModelMode mode, SearchBudget& budget) {
  detail::require_pattern(h);
  auto r = detail::run_engine(g, h, 1, mode, Disjointness::kEdge, budget);
  FindResult out;
  out.status = r.status;
  if (r.status == SearchStatus::kFound) out.model = std::move(r.models.front());
  return out;
}

inline FindResult find_expansion(const Multigraph& g, const Multigraph& h, ModelMode mode = ModelMode::kImmersion) {
  SearchBudget unlimited;
  return find_expansion(g, h, mode, unlimited);
}

// Visits every model (no deepening, no symmetry breaking). The visitor
// returns true to stop. Returns false if the budget ran out.
inline bool for_each_model(const Multigraph& g, const Multigraph& h, ModelMode mode, SearchBudget& budget,
                           const std::function<bool(const ImmersionModel&)>& visit) {
  detail::require_pattern(h);
  detail::DenseGraph dense(g);
  detail::Pattern pattern(h, 1, false);
  detail::Searcher searcher(dense, pattern, mode, Disjointness::kEdge, budget);
  detail::Searcher::Visitor wrapper = [&](const std::vector<ImmersionModel>& ms) { return visit(ms.front()); };
  try {
    searcher.run(std::max(1, dense.size() - 1), &wrapper);
  } catch (const detail::BudgetOut&) {
    return false;
  }
  return true;
}

struct PackingResult {
  std::vector<ImmersionModel> models;
  bool exact = false;
  bool budget_exhausted = false;
};

// Maximum number of pairwise edge- (or vertex-) disjoint expansions, found
// per connected component by searching for k disjoint copies at once with
// k = 1, 2, ... until the search proves k impossible. `upper_bound`, when
// known (any valid cover size is one), stops the climb early.
inline PackingResult max_packing(const Multigraph& g, const Multigraph& h, ModelMode mode, Disjointness disjointness,
                                 SearchBudget& budget, std::optional<int> upper_bound = std::nullopt) {
  detail::require_pattern(h);
  PackingResult out;
  out.exact = true;
  for (const auto& comp : connected_components(g)) {
    if (upper_bound && static_cast<int>(out.models.size()) >= *upper_bound) break;
    Multigraph part = induced_subgraph(g, std::set<VertexId>(comp.begin(), comp.end()));
    const int cap = disjointness == Disjointness::kEdge
                        ? static_cast<int>(part.num_edges() / h.num_edges())
                        : static_cast<int>(part.num_vertices() / h.num_vertices());
    std::vector<ImmersionModel> best;
    for (int k = 1; k <= cap; ++k) {
      if (upper_bound && static_cast<int>(out.models.size() + best.size()) >= *upper_bound) break;
      auto r = detail::run_engine(part, h, k, mode, disjointness, budget);
      if (r.status == SearchStatus::kFound) {
        best = std::move(r.models);
        continue;
      }
      if (r.status == SearchStatus::kBudgetExhausted) {
        out.exact = false;
        out.budget_exhausted = true;
      }
      break;
    }
    out.models.insert(out.models.end(), best.begin(), best.end());
    if (out.budget_exhausted) break;
  }
  return out;
}

struct CoverResult {
  SearchStatus status = SearchStatus::kFound;  // kFound: exact minimum; else budget ran out
  std::set<EdgeRef> edges;
  std::set<VertexId> vertices;

  std::size_t size() const { return edges.size() + vertices.size(); }
};

namespace detail {

using PairKey = std::pair<VertexId, VertexId>;

inline Multigraph remove_counts(const Multigraph& g, const std::map<PairKey, int>& removed) {
  Multigraph out = g;
  for (const auto& [p, c] : removed) {
    if (c > 0) out.remove_edge(p.first, p.second, c);
  }
  return out;
}

// Hitting-set branching: any cover must destroy the expansion just found,
// which needs enough removals on one of its multiedges. Branch i takes
// multiedge i and freezes multiedges 1..i-1 at a level that keeps the
// expansion's use of them intact, so every cover is reached once.
class EdgeCoverSearch {
 public:
  EdgeCoverSearch(const Multigraph& g, const Multigraph& h, ModelMode mode, SearchBudget& budget)
      : g_(g), h_(h), mode_(mode), budget_(budget) {}

  bool run(int allowance, std::map<PairKey, int>& solution) {
    std::map<PairKey, int> removed;
    std::map<PairKey, int> caps;
    for (const auto& e : g_.multiedges()) caps[{e.u, e.v}] = e.mult;
    if (!dfs(removed, caps, allowance)) return false;
    solution = best_;
    return true;
  }

 private:
  bool dfs(std::map<PairKey, int>& removed, std::map<PairKey, int> caps, int allowance) {
    auto r = run_engine(remove_counts(g_, removed), h_, 1, mode_, Disjointness::kEdge, budget_);
    if (r.status == SearchStatus::kBudgetExhausted) throw BudgetOut{};
    if (r.status == SearchStatus::kNoneExists) {
      best_ = removed;
      return true;
    }
    if (allowance == 0) return false;
    std::map<PairKey, int> usage;
    for (const auto& [he, path] : r.models.front().psi) {
      for (const auto& e : path) ++usage[{e.u, e.v}];
    }
    for (const auto& [p, u] : usage) {
      const int m = g_.mult(p.first, p.second);
      const int need = m - u + 1;
      const int delta = need - removed[p];
      if (need <= caps[p] && delta <= allowance) {
        const int saved = removed[p];
        removed[p] = need;
        if (dfs(removed, caps, allowance - delta)) return true;
        removed[p] = saved;
      }
      caps[p] = std::min(caps[p], m - u);
    }
    return false;
  }

  const Multigraph& g_;
  const Multigraph& h_;
  ModelMode mode_;
  SearchBudget& budget_;
  std::map<PairKey, int> best_;
};

class VertexCoverSearch {
 public:
  VertexCoverSearch(const Multigraph& g, const Multigraph& h, ModelMode mode, SearchBudget& budget)
      : g_(g), h_(h), mode_(mode), budget_(budget) {}

  bool run(int allowance, std::set<VertexId>& solution) {
    std::set<VertexId> removed;
    std::set<VertexId> frozen;
    if (!dfs(removed, frozen, allowance)) return false;
    solution = best_;
    return true;
  }

 private:
  bool dfs(std::set<VertexId>& removed, std::set<VertexId> frozen, int allowance) {
    auto r = run_engine(without_vertices(g_, removed), h_, 1, mode_, Disjointness::kEdge, budget_);
    if (r.status == SearchStatus::kBudgetExhausted) throw BudgetOut{};
    if (r.status == SearchStatus::kNoneExists) {
      best_ = removed;
      return true;
    }
    if (allowance == 0) return false;
    for (VertexId v : expansion_of(r.models.front()).vertices) {
      if (frozen.count(v)) continue;
      removed.insert(v);
      if (dfs(removed, frozen, allowance - 1)) return true;
      removed.erase(v);
      frozen.insert(v);
    }
    return false;
  }

  const Multigraph& g_;
  const Multigraph& h_;
  ModelMode mode_;
  SearchBudget& budget_;
  std::set<VertexId> best_;
};

}  // namespace detail

// Exact minimum cover (edge set, or vertex set for vertex disjointness),
// by iterative deepening on the cover size.
inline CoverResult min_cover(const Multigraph& g, const Multigraph& h, ModelMode mode, Disjointness disjointness,
                             SearchBudget& budget) {
  detail::require_pattern(h);
  CoverResult out;
  try {
    if (disjointness == Disjointness::kEdge) {
      detail::EdgeCoverSearch search(g, h, mode, budget);
      for (int size = 0;; ++size) {
        std::map<detail::PairKey, int> removed;
        if (search.run(size, removed)) {
          for (const auto& [p, c] : removed) {
            for (int i = 1; i <= c; ++i) out.edges.insert(EdgeRef{p.first, p.second, i});
          }
          break;
        }
      }
    } else {
      detail::VertexCoverSearch search(g, h, mode, budget);
      for (int size = 0;; ++size) {
        if (search.run(size, out.vertices)) break;
      }
    }
  } catch (const detail::BudgetOut&) {
    out.status = SearchStatus::kBudgetExhausted;
    out.edges.clear();
    out.vertices.clear();
  }
  return out;
}

// Number of components of G - X that contain a vertex of the expansion.
inline std::size_t components_met(const Multigraph& g, const Expansion& m, const std::set<VertexId>& x) {
  std::size_t count = 0;
  for (const auto& comp : connected_components(without_vertices(g, x))) {
    for (VertexId v : comp) {
      if (m.vertices.count(v)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Square grid as a strong immersion of the enriched wall

struct GridInWallPlus {
  GridGraph grid;  // (k+1) x (k+1); grid vertex (i, j+1) is branch column j
  Wall host;       // W+_k
  ImmersionModel model;
};

// Branch vertex of grid row i, column j is wall vertex (i, 2j+1). Vertical
// grid edges use the wall edge (i,y)-(i+1,y) when present and otherwise
// detour through column y+1 on second copies of doubled edges (column 2k+2
// for the last branch column). For even k the wall has no vertex (k+1, 1),
// so the last row of branch vertices sits one column right, at (k+1, 2j+2).
inline GridInWallPlus grid_in_wallplus(int k) {
  if (k < 2) throw Error(ErrorKind::kBadSize, "grid_in_wallplus needs k >= 2");
  GridInWallPlus out;
  out.host = wall_plus(k);
  out.grid = grid(k + 1, k + 1);
  const Coordinates& at = out.host.coords;
  const bool shifted_last_row = k % 2 == 0;

  auto branch = [&](int i, int j) -> Coord {
    if (i == k + 1 && shifted_last_row) return {i, 2 * j + 2};
    return {i, 2 * j + 1};
  };
  auto vertex = [&](Coord c) { return at.vertex(c); };
  auto edge = [&](Coord a, Coord b, int index) { return make_edge(vertex(a), vertex(b), index); };

  ImmersionModel& m = out.model;
  m.mode = ModelMode::kStrongImmersion;
  for (int i = 1; i <= k + 1; ++i) {
    for (int j = 0; j <= k; ++j) m.phi[out.grid.coords.vertex({i, j + 1})] = vertex(branch(i, j));
  }

  auto store = [&](VertexId gu, VertexId gv, std::vector<EdgeRef> path) {
    EdgeRef he = make_edge(gu, gv);
    if (m.phi.at(he.u) != m.phi.at(gu)) std::reverse(path.begin(), path.end());
    m.psi[he] = std::move(path);
  };

  for (int i = 1; i <= k + 1; ++i) {
    for (int j = 0; j < k; ++j) {
      Coord a = branch(i, j);
      Coord mid{a.x, a.y + 1};
      Coord b = branch(i, j + 1);
      store(out.grid.coords.vertex({i, j + 1}), out.grid.coords.vertex({i, j + 2}), {edge(a, mid, 1), edge(mid, b, 1)});
    }
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      Coord a = branch(i, j);
      Coord b = branch(i + 1, j);
      const int y = a.y;
      std::vector<EdgeRef> path;
      if (b.y == y && (i + y) % 2 == 0) {
        path = {edge(a, b, 1)};
      } else if (b.y == y + 1) {
        // shifted last row: step right on row i, then down
        const int index = out.host.graph.mult(vertex(a), vertex({i, y + 1})) == 2 ? 2 : 1;
        path = {edge(a, {i, y + 1}, index), edge({i, y + 1}, b, 1)};
      } else if (j < k) {
        path = {edge(a, {i, y + 1}, 2), edge({i, y + 1}, {i + 1, y + 1}, 1), edge({i + 1, y + 1}, b, 2)};
      } else {
        path = {edge(a, {i, y + 1}, 1), edge({i, y + 1}, {i + 1, y + 1}, 1), edge({i + 1, y + 1}, b, 1)};
      }
      store(out.grid.coords.vertex({i, j + 1}), out.grid.coords.vertex({i + 1, j + 1}), std::move(path));
    }
  }
  return out;
}

}  // namespace iep
