#pragma once

// Loopless multigraph with stable vertex identifiers, plus the three
// elementary operations everything else is built from: lift, dissolve and
// subdivide. All operations are pure and return new values.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "iep/error.hpp"

namespace iep {

struct VertexId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const VertexId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, VertexId v) { return os << v.value; }
inline std::string to_string(VertexId v) { return std::to_string(v.value); }

// One particular instance {u,v}_index of a multiedge. Endpoints are kept
// normalized (u < v); index is 1-based.
struct EdgeRef {
  VertexId u;
  VertexId v;
  int index = 1;

  constexpr auto operator<=>(const EdgeRef&) const = default;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool touches(VertexId x) const { return x == u || x == v; }
};

inline EdgeRef make_edge(VertexId a, VertexId b, int index = 1) {
  if (b < a) std::swap(a, b);
  return EdgeRef{a, b, index};
}

inline std::ostream& operator<<(std::ostream& os, const EdgeRef& e) {
  return os << "{" << e.u << "," << e.v << "}_" << e.index;
}
inline std::string to_string(const EdgeRef& e) {
  return "{" + to_string(e.u) + "," + to_string(e.v) + "}_" + std::to_string(e.index);
}

struct MultiEdge {
  VertexId u;
  VertexId v;
  int mult = 0;

  auto operator<=>(const MultiEdge&) const = default;
};

class Multigraph {
 public:
  Multigraph() = default;

  // Vertices 1..n, no edges.
  explicit Multigraph(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_vertex();
  }

  VertexId add_vertex() {
    VertexId v{next_id_};
    adj_.emplace(v, Row{});
    ++next_id_;
    return v;
  }

  void add_vertex(VertexId v) {
    if (v.value == 0) throw Error(ErrorKind::kInvalidArgument, "vertex id 0 is reserved");
    adj_.emplace(v, Row{});
    next_id_ = std::max(next_id_, v.value + 1);
  }

  void add_edge(VertexId a, VertexId b, int count = 1) {
    if (a == b) throw Error(ErrorKind::kInvalidArgument, "loop at vertex " + to_string(a));
    if (count < 1) throw Error(ErrorKind::kInvalidArgument, "edge multiplicity must be positive");
    require_vertex(a);
    require_vertex(b);
    adj_[a][b] += count;
    adj_[b][a] += count;
    num_edges_ += static_cast<std::size_t>(count);
  }

  void remove_edge(VertexId a, VertexId b, int count = 1) {
    int m = mult(a, b);
    if (count < 1 || m < count) {
      throw Error(ErrorKind::kMissingEdge, "cannot remove " + std::to_string(count) + " copies of {" +
                                               to_string(a) + "," + to_string(b) + "}");
    }
    if (m == count) {
      adj_[a].erase(b);
      adj_[b].erase(a);
    } else {
      adj_[a][b] -= count;
      adj_[b][a] -= count;
    }
    num_edges_ -= static_cast<std::size_t>(count);
  }

  void remove_vertex(VertexId v) {
    require_vertex(v);
    for (const auto& [w, m] : adj_.at(v)) {
      adj_[w].erase(v);
      num_edges_ -= static_cast<std::size_t>(m);
    }
    adj_.erase(v);
  }

  bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }

  bool has_edge(const EdgeRef& e) const { return e.index >= 1 && e.index <= mult(e.u, e.v); }

  int mult(VertexId a, VertexId b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) return 0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0 : jt->second;
  }

  // Number of distinct neighbors.
  int deg(VertexId v) const { return static_cast<int>(row(v).size()); }

  // Number of incident edge instances.
  int mdeg(VertexId v) const {
    int total = 0;
    for (const auto& [w, m] : row(v)) total += m;
    return total;
  }

  const std::map<VertexId, int>& neighbors(VertexId v) const { return row(v); }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  std::size_t num_multiedges() const {
    std::size_t count = 0;
    for (const auto& [v, r] : adj_) count += r.size();
    return count / 2;
  }

  // Ascending id order; ids are handed out increasingly, so this is also
  // insertion order for graphs built with add_vertex().
  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(adj_.size());
    for (const auto& [v, r] : adj_) out.push_back(v);
    return out;
  }

  // Lexicographically sorted (u < v).
  std::vector<MultiEdge> multiedges() const {
    std::vector<MultiEdge> out;
    for (const auto& [u, r] : adj_) {
      for (const auto& [v, m] : r) {
        if (u < v) out.push_back(MultiEdge{u, v, m});
      }
    }
    return out;
  }

  std::vector<EdgeRef> edge_instances() const {
    std::vector<EdgeRef> out;
    for (const auto& e : multiedges()) {
      for (int i = 1; i <= e.mult; ++i) out.push_back(EdgeRef{e.u, e.v, i});
    }
    return out;
  }

  std::uint32_t next_id() const { return next_id_; }

  bool operator==(const Multigraph& other) const { return adj_ == other.adj_; }

 private:
  using Row = std::map<VertexId, int>;

  void require_vertex(VertexId v) const {
    if (!has_vertex(v)) throw Error(ErrorKind::kInvalidArgument, "no vertex " + to_string(v));
  }

  const Row& row(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw Error(ErrorKind::kInvalidArgument, "no vertex " + to_string(v));
    return it->second;
  }

  std::map<VertexId, Row> adj_;
  std::size_t num_edges_ = 0;
  std::uint32_t next_id_ = 1;
};

// ---------------------------------------------------------------------------
// Elementary operations

inline void require_edge(const Multigraph& g, const EdgeRef& e) {
  if (!g.has_vertex(e.u) || !g.has_vertex(e.v) || !g.has_edge(e)) {
    throw Error(ErrorKind::kMissingEdge, "edge " + to_string(e) + " is not present");
  }
}

// Removes e1 = {x,y} and e2 = {y,z}; adds {x,z} when x != z.
inline Multigraph lift(const Multigraph& g, const EdgeRef& e1, const EdgeRef& e2) {
  require_edge(g, e1);
  require_edge(g, e2);
  if (e1 == e2) throw Error(ErrorKind::kNotIncident, "cannot lift an edge with itself");

  bool same_pair = e1.u == e2.u && e1.v == e2.v;
  std::set<VertexId> shared;
  for (VertexId a : {e1.u, e1.v}) {
    if (e2.touches(a)) shared.insert(a);
  }
  if (shared.empty()) {
    throw Error(ErrorKind::kNotIncident, to_string(e1) + " and " + to_string(e2) + " share no endpoint");
  }

  Multigraph out = g;
  out.remove_edge(e1.u, e1.v);
  out.remove_edge(e2.u, e2.v);
  if (!same_pair) {
    VertexId y = *shared.begin();
    out.add_edge(e1.other(y), e2.other(y));
  }
  return out;
}

// Dissolves a vertex with exactly two incident edge instances.
inline Multigraph dissolve(const Multigraph& g, VertexId v) {
  if (g.mdeg(v) != 2) {
    throw Error(ErrorKind::kBadDegree, "vertex " + to_string(v) + " has multidegree " + std::to_string(g.mdeg(v)));
  }
  std::vector<VertexId> ends;
  for (const auto& [w, m] : g.neighbors(v)) {
    for (int i = 0; i < m; ++i) ends.push_back(w);
  }
  Multigraph out = g;
  out.remove_vertex(v);
  if (ends[0] != ends[1]) out.add_edge(ends[0], ends[1]);
  return out;
}

inline std::pair<Multigraph, VertexId> subdivide(const Multigraph& g, const EdgeRef& e) {
  require_edge(g, e);
  Multigraph out = g;
  out.remove_edge(e.u, e.v);
  VertexId s = out.add_vertex();
  out.add_edge(e.u, s);
  out.add_edge(s, e.v);
  return {std::move(out), s};
}

// ---------------------------------------------------------------------------
// Structural helpers

inline Multigraph induced_subgraph(const Multigraph& g, const std::set<VertexId>& keep) {
  Multigraph out;
  for (VertexId v : keep) {
    if (g.has_vertex(v)) out.add_vertex(v);
  }
  for (const auto& e : g.multiedges()) {
    if (keep.count(e.u) && keep.count(e.v)) out.add_edge(e.u, e.v, e.mult);
  }
  return out;
}

inline Multigraph without_vertices(const Multigraph& g, const std::set<VertexId>& drop) {
  std::set<VertexId> keep;
  for (VertexId v : g.vertices()) {
    if (!drop.count(v)) keep.insert(v);
  }
  return induced_subgraph(g, keep);
}

// Removes a set of edge instances. Instances of one multiedge are
// interchangeable, so only the count per pair matters; indices are checked.
inline Multigraph without_edges(const Multigraph& g, const std::set<EdgeRef>& drop) {
  Multigraph out = g;
  std::map<std::pair<VertexId, VertexId>, int> count;
  for (const auto& e : drop) {
    require_edge(g, e);
    ++count[{e.u, e.v}];
  }
  for (const auto& [pair, c] : count) out.remove_edge(pair.first, pair.second, c);
  return out;
}

inline std::vector<std::vector<VertexId>> connected_components(const Multigraph& g) {
  std::vector<std::vector<VertexId>> out;
  std::set<VertexId> seen;
  for (VertexId start : g.vertices()) {
    if (seen.count(start)) continue;
    std::vector<VertexId> comp{start};
    seen.insert(start);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const auto& [w, m] : g.neighbors(comp[i])) {
        if (seen.insert(w).second) comp.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Multigraph& g) { return connected_components(g).size() <= 1; }

inline int max_multiplicity(const Multigraph& g) {
  int best = 0;
  for (const auto& e : g.multiedges()) best = std::max(best, e.mult);
  return best;
}

inline int min_mdeg(const Multigraph& g) {
  int best = -1;
  for (VertexId v : g.vertices()) {
    int d = g.mdeg(v);
    if (best < 0 || d < best) best = d;
  }
  return best < 0 ? 0 : best;
}

inline int max_mdeg(const Multigraph& g) {
  int best = 0;
  for (VertexId v : g.vertices()) best = std::max(best, g.mdeg(v));
  return best;
}

inline Multigraph underlying_simple(const Multigraph& g) {
  Multigraph out;
  for (VertexId v : g.vertices()) out.add_vertex(v);
  for (const auto& e : g.multiedges()) out.add_edge(e.u, e.v);
  return out;
}

// Same multiedge structure after sorting both vertex lists and matching by
// position. Used for comparing graphs whose ids differ only by a shift.
inline Multigraph relabel(const Multigraph& g, const std::map<VertexId, VertexId>& to) {
  Multigraph out;
  for (VertexId v : g.vertices()) out.add_vertex(to.at(v));
  for (const auto& e : g.multiedges()) out.add_edge(to.at(e.u), to.at(e.v), e.mult);
  return out;
}

// Renumbers vertices to 1..n in ascending id order.
inline Multigraph compacted(const Multigraph& g) {
  std::map<VertexId, VertexId> to;
  std::uint32_t next = 1;
  for (VertexId v : g.vertices()) to[v] = VertexId{next++};
  return relabel(g, to);
}

}  // namespace iep

template <>
struct std::hash<iep::VertexId> {
  std::size_t operator()(iep::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
