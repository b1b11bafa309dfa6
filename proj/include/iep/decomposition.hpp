#pragma once

// Rooted tree-partitions and tree-cut decompositions: validation, widths,
// torsos, 3-centers, nice-ification and exact widths for small graphs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "iep/immersion.hpp"
#include "iep/multigraph.hpp"

namespace iep {

// Nodes are 0..size()-1; parent[root] == -1.
struct RootedBags {
  std::vector<int> parent;
  std::vector<std::set<VertexId>> bags;

  std::size_t size() const { return parent.size(); }

  int root() const {
    for (std::size_t t = 0; t < parent.size(); ++t) {
      if (parent[t] < 0) return static_cast<int>(t);
    }
    return -1;
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> out(size());
    for (std::size_t t = 0; t < size(); ++t) {
      if (parent[t] >= 0) out[parent[t]].push_back(static_cast<int>(t));
    }
    return out;
  }

  std::vector<int> depths() const {
    std::vector<int> out(size(), -1);
    for (std::size_t t = 0; t < size(); ++t) {
      int d = 0;
      for (int x = static_cast<int>(t); parent[x] >= 0; x = parent[x]) ++d;
      out[t] = d;
    }
    return out;
  }

  // Longest downward distance to a leaf.
  std::vector<int> heights() const {
    std::vector<int> out(size(), 0);
    for (int t : postorder()) {
      if (parent[t] >= 0) out[parent[t]] = std::max(out[parent[t]], out[t] + 1);
    }
    return out;
  }

  std::vector<int> postorder() const {
    std::vector<int> out;
    auto kids = children();
    std::function<void(int)> visit = [&](int t) {
      for (int c : kids[t]) visit(c);
      out.push_back(t);
    };
    if (root() >= 0) visit(root());
    return out;
  }

  std::vector<int> subtree(int t) const {
    auto kids = children();
    std::vector<int> out{t};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (int c : kids[out[i]]) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::set<VertexId> subtree_vertices(int t) const {
    std::set<VertexId> out;
    for (int s : subtree(t)) out.insert(bags[s].begin(), bags[s].end());
    return out;
  }

  std::map<VertexId, int> node_of() const {
    std::map<VertexId, int> out;
    for (std::size_t t = 0; t < size(); ++t) {
      for (VertexId v : bags[t]) out[v] = static_cast<int>(t);
    }
    return out;
  }

  // Nodes strictly inside the tree path between a and b.
  std::vector<int> interior_path(int a, int b) const {
    std::vector<int> up_a{a};
    std::vector<int> up_b{b};
    for (int x = a; parent[x] >= 0; x = parent[x]) up_a.push_back(parent[x]);
    for (int x = b; parent[x] >= 0; x = parent[x]) up_b.push_back(parent[x]);
    while (up_a.size() > 1 && up_b.size() > 1 && up_a[up_a.size() - 2] == up_b[up_b.size() - 2]) {
      up_a.pop_back();
      up_b.pop_back();
    }
    std::vector<int> out;
    if (up_a.back() != up_b.back()) return out;  // not one tree
    for (std::size_t i = 1; i < up_a.size(); ++i) out.push_back(up_a[i]);
    for (std::size_t i = 1; i + 1 < up_b.size(); ++i) out.push_back(up_b[i]);
    out.erase(std::remove_if(out.begin(), out.end(), [&](int x) { return x == a || x == b; }), out.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool operator==(const RootedBags&) const = default;
};

struct TreePartition : RootedBags {};
struct TreeCutDecomposition : RootedBags {};

inline TreeCutDecomposition as_tree_cut(const TreePartition& p) { return TreeCutDecomposition{{p.parent, p.bags}}; }

struct WidthReport {
  int width = 0;
  int max_bag = 0;                // tree-partitions
  int max_edge_count = 0;         // tree-partitions: max |E_f|
  std::vector<int> adhesion;      // tree-cut decompositions, per node
  std::vector<int> center_size;   // tree-cut decompositions, per node
};

namespace detail {

inline void fail_decomposition(const std::string& what) { throw Error(ErrorKind::kInvalidDecomposition, what); }

inline void check_tree(const RootedBags& d) {
  if (d.parent.empty()) fail_decomposition("tree has no nodes");
  if (d.parent.size() != d.bags.size()) fail_decomposition("parent array and bag list differ in length");
  int roots = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    int p = d.parent[t];
    if (p < 0) {
      ++roots;
    } else if (p >= static_cast<int>(d.size())) {
      fail_decomposition("node " + std::to_string(t) + " has unknown parent " + std::to_string(p));
    }
  }
  if (roots != 1) fail_decomposition("tree must have exactly one root, found " + std::to_string(roots));
  for (std::size_t t = 0; t < d.size(); ++t) {
    std::size_t steps = 0;
    for (int x = static_cast<int>(t); d.parent[x] >= 0; x = d.parent[x]) {
      if (++steps > d.size()) fail_decomposition("parent pointers contain a cycle");
    }
  }
}

inline void check_cover(const Multigraph& g, const RootedBags& d, bool allow_empty) {
  std::set<VertexId> seen;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (!allow_empty && d.bags[t].empty() && g.num_vertices() > 0) {
      fail_decomposition("bag of node " + std::to_string(t) + " is empty");
    }
    for (VertexId v : d.bags[t]) {
      if (!g.has_vertex(v)) fail_decomposition("bag of node " + std::to_string(t) + " holds unknown vertex " + to_string(v));
      if (!seen.insert(v).second) fail_decomposition("vertex " + to_string(v) + " lies in two bags");
    }
  }
  if (seen.size() != g.num_vertices()) fail_decomposition("bags do not cover every vertex");
}

inline void check_node(const RootedBags& d, int t) {
  if (t < 0 || t >= static_cast<int>(d.size())) throw Error(ErrorKind::kInvalidNode, "no node " + std::to_string(t));
}

}  // namespace detail

inline WidthReport validate_partition(const Multigraph& g, const TreePartition& d) {
  detail::check_tree(d);
  detail::check_cover(g, d, false);
  auto node = d.node_of();
  WidthReport r;
  for (const auto& bag : d.bags) r.max_bag = std::max(r.max_bag, static_cast<int>(bag.size()));
  std::map<int, int> crossing;  // child node -> |E_f| of the edge to its parent
  for (const auto& e : g.multiedges()) {
    int a = node.at(e.u);
    int b = node.at(e.v);
    if (a == b) continue;
    if (d.parent[a] == b) {
      crossing[a] += e.mult;
    } else if (d.parent[b] == a) {
      crossing[b] += e.mult;
    } else {
      detail::fail_decomposition("edge " + to_string(e.u) + "-" + to_string(e.v) + " joins non-adjacent nodes " +
                                 std::to_string(a) + " and " + std::to_string(b));
    }
  }
  for (const auto& [t, c] : crossing) r.max_edge_count = std::max(r.max_edge_count, c);
  r.width = std::max(r.max_bag, r.max_edge_count);
  return r;
}

// Edges with exactly one endpoint in G_t (0 at the root).
inline int adhesion(const Multigraph& g, const RootedBags& d, int t) {
  detail::check_node(d, t);
  if (d.parent[t] < 0) return 0;
  auto inside = d.subtree_vertices(t);
  int count = 0;
  for (const auto& e : g.multiedges()) {
    if ((inside.count(e.u) != 0) != (inside.count(e.v) != 0)) count += e.mult;
  }
  return count;
}

struct Torso {
  Multigraph graph;
  std::vector<VertexId> z;                    // consolidated vertex per component of T - t
  std::vector<std::vector<int>> components;  // tree nodes of each component
};

// Components of T - t are listed parent side first, then children in id
// order. Consolidated vertices get fresh ids above every id of G.
inline Torso torso(const Multigraph& g, const TreeCutDecomposition& d, int t) {
  detail::check_node(d, t);
  Torso out;
  if (d.size() == 1) {
    out.graph = g;
    return out;
  }
  auto kids = d.children();
  std::vector<int> in_subtree(d.size(), 0);
  for (int s : d.subtree(t)) in_subtree[s] = 1;
  if (d.parent[t] >= 0) {
    std::vector<int> side;
    for (std::size_t s = 0; s < d.size(); ++s) {
      if (!in_subtree[s]) side.push_back(static_cast<int>(s));
    }
    out.components.push_back(side);
  }
  for (int c : kids[t]) out.components.push_back(d.subtree(c));

  std::map<VertexId, int> comp_of;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    for (int s : out.components[i]) {
      for (VertexId v : d.bags[s]) comp_of[v] = static_cast<int>(i);
    }
  }
  for (VertexId v : d.bags[t]) out.graph.add_vertex(v);
  std::uint32_t next = g.next_id();
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    VertexId z{next++};
    out.graph.add_vertex(z);
    out.z.push_back(z);
  }
  auto image = [&](VertexId v) {
    auto it = comp_of.find(v);
    return it == comp_of.end() ? v : out.z[it->second];
  };
  for (const auto& e : g.multiedges()) {
    VertexId a = image(e.u);
    VertexId b = image(e.v);
    if (a != b) out.graph.add_edge(a, b, e.mult);
  }
  return out;
}

// Outside X, vertices of multidegree <= 1 are deleted and vertices of
// multidegree 2 are dissolved, until neither applies.
inline Multigraph three_center(const Multigraph& g, const std::set<VertexId>& x, bool descending = false) {
  Multigraph h = g;
  bool changed = true;
  while (changed) {
    changed = false;
    auto order = h.vertices();
    if (descending) std::reverse(order.begin(), order.end());
    for (VertexId v : order) {
      if (x.count(v) || !h.has_vertex(v)) continue;
      int m = h.mdeg(v);
      if (m <= 1) {
        h.remove_vertex(v);
        changed = true;
      } else if (m == 2) {
        h = dissolve(h, v);
        changed = true;
      }
    }
  }
  return h;
}

inline WidthReport validate_tcd(const Multigraph& g, const TreeCutDecomposition& d) {
  detail::check_tree(d);
  detail::check_cover(g, d, true);
  WidthReport r;
  r.adhesion.assign(d.size(), 0);
  r.center_size.assign(d.size(), 0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    const int node = static_cast<int>(t);
    r.adhesion[t] = adhesion(g, d, node);
    r.center_size[t] = static_cast<int>(three_center(torso(g, d, node).graph, d.bags[t]).num_vertices());
    r.width = std::max({r.width, r.adhesion[t], r.center_size[t]});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Nice-ification

struct NiceViolation {
  int node = -1;
  int sibling = -1;
};

// Deepest thin node with an edge into a sibling subtree (ties: lowest id),
// paired with the lowest-id such sibling.
inline std::optional<NiceViolation> find_nice_violation(const Multigraph& g, const TreeCutDecomposition& d) {
  auto kids = d.children();
  auto depth = d.depths();
  std::vector<std::set<VertexId>> below(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) below[t] = d.subtree_vertices(static_cast<int>(t));
  std::optional<NiceViolation> best;
  for (std::size_t t = 0; t < d.size(); ++t) {
    const int p = d.parent[t];
    if (p < 0 || adhesion(g, d, static_cast<int>(t)) > 2) continue;
    for (int b : kids[p]) {
      if (b == static_cast<int>(t)) continue;
      bool touches = false;
      for (VertexId v : below[t]) {
        for (const auto& [w, m] : g.neighbors(v)) {
          if (below[b].count(w)) {
            touches = true;
            break;
          }
        }
        if (touches) break;
      }
      if (!touches) continue;
      if (!best || depth[t] > depth[best->node]) best = NiceViolation{static_cast<int>(t), b};
      break;
    }
  }
  return best;
}

inline bool is_nice(const Multigraph& g, const TreeCutDecomposition& d) { return !find_nice_violation(g, d).has_value(); }

// Repeatedly re-hangs a violating thin node below the sibling it touches.
inline TreeCutDecomposition make_nice(const Multigraph& g, const TreeCutDecomposition& input) {
  TreeCutDecomposition d = input;
  int width = validate_tcd(g, d).width;
  const std::size_t limit = std::max<std::size_t>(1, d.size() * d.size());
  for (std::size_t round = 0;; ++round) {
    auto v = find_nice_violation(g, d);
    if (!v) break;
    if (round >= limit) throw Error(ErrorKind::kIterationBudgetExceeded, "nice-ification did not settle");
    d.parent[v->node] = v->sibling;
    int now = validate_tcd(g, d).width;
    if (now > width) throw Error(ErrorKind::kInvariantViolation, "nice-ification increased the width");
    width = now;
  }
  return d;
}

// Drops empty nodes with at most one tree neighbor until none is left, then
// renumbers the surviving nodes in their old order.
inline TreeCutDecomposition drop_empty_ends(const TreeCutDecomposition& input) {
  TreeCutDecomposition d = input;
  std::vector<char> alive(d.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(d.size(), 0);
    int live = 0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (!alive[t]) continue;
      ++live;
      if (d.parent[t] >= 0) {
        ++degree[t];
        ++degree[d.parent[t]];
      }
    }
    if (live <= 1) break;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (!alive[t] || !d.bags[t].empty() || degree[t] > 1) continue;
      alive[t] = 0;
      if (d.parent[t] >= 0) {
        // a leaf: nothing hangs below it
      } else {
        for (std::size_t c = 0; c < d.size(); ++c) {
          if (alive[c] && d.parent[c] == static_cast<int>(t)) d.parent[c] = -1;
        }
      }
      changed = true;
      break;
    }
  }
  std::vector<int> renumber(d.size(), -1);
  int next = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (alive[t]) renumber[t] = next++;
  }
  TreeCutDecomposition out;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (!alive[t]) continue;
    out.parent.push_back(d.parent[t] < 0 ? -1 : renumber[d.parent[t]]);
    out.bags.push_back(d.bags[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact widths for small graphs

inline constexpr int kDefaultExactCap = 8;
inline constexpr int kDefaultTreewidthCap = 10;

struct ExactTcw {
  int width = 0;
  TreeCutDecomposition decomposition;
};

struct ExactTpw {
  int width = 0;
  TreePartition partition;
};

namespace detail {

using Mask = std::uint32_t;

struct SmallGraph {
  int n = 0;
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> m;  // multiplicities

  explicit SmallGraph(const Multigraph& g) {
    ids = g.vertices();
    n = static_cast<int>(ids.size());
    std::map<VertexId, int> at;
    for (int i = 0; i < n; ++i) at[ids[i]] = i;
    m.assign(n, std::vector<int>(n, 0));
    for (const auto& e : g.multiedges()) {
      m[at[e.u]][at[e.v]] = e.mult;
      m[at[e.v]][at[e.u]] = e.mult;
    }
  }

  int between(Mask a, Mask b) const {
    int total = 0;
    for (int i = 0; i < n; ++i) {
      if (!(a >> i & 1)) continue;
      for (int j = 0; j < n; ++j) {
        if (b >> j & 1) total += m[i][j];
      }
    }
    return total;
  }

  Mask neighbors(Mask a) const {
    Mask out = 0;
    for (int i = 0; i < n; ++i) {
      if (!(a >> i & 1)) continue;
      for (int j = 0; j < n; ++j) {
        if (m[i][j]) out |= Mask{1} << j;
      }
    }
    return out & ~a;
  }

  std::set<VertexId> to_set(Mask a) const {
    std::set<VertexId> out;
    for (int i = 0; i < n; ++i) {
      if (a >> i & 1) out.insert(ids[i]);
    }
    return out;
  }
};

// 3-center order of a dense multigraph whose first `kept` vertices are the
// bag; same reductions as three_center.
inline int dense_center_size(std::vector<std::vector<int>> m, int kept) {
  const int n = static_cast<int>(m.size());
  std::vector<char> alive(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = kept; v < n; ++v) {
      if (!alive[v]) continue;
      int deg = 0;
      for (int w = 0; w < n; ++w) deg += m[v][w];
      if (deg <= 1) {
        for (int w = 0; w < n; ++w) m[v][w] = m[w][v] = 0;
        alive[v] = 0;
        changed = true;
      } else if (deg == 2) {
        int a = -1;
        int b = -1;
        for (int w = 0; w < n; ++w) {
          for (int c = 0; c < m[v][w]; ++c) (a < 0 ? a : b) = w;
        }
        for (int w = 0; w < n; ++w) m[v][w] = m[w][v] = 0;
        if (a != b) {
          ++m[a][b];
          ++m[b][a];
        }
        alive[v] = 0;
        changed = true;
      }
    }
  }
  int count = 0;
  for (int v = 0; v < n; ++v) count += alive[v];
  return count;
}

class TcwSolver {
 public:
  TcwSolver(const SmallGraph& g, SearchBudget& budget) : g_(g), budget_(budget) {}

  std::optional<TreeCutDecomposition> solve(int w) {
    w_ = w;
    const Mask full = (Mask{1} << g_.n) - 1;
    feasible_.assign(std::size_t{1} << g_.n, 0);
    choice_.assign(std::size_t{1} << g_.n, {});
    std::vector<Mask> order;
    for (Mask s = 1; s <= full; ++s) order.push_back(s);
    std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    for (Mask s : order) {
      if (s != full && g_.between(s, full & ~s) > w_) continue;
      feasible_[s] = try_set(s) ? 1 : 0;
    }
    if (g_.n == 0) return TreeCutDecomposition{{{-1}, {{}}}};
    if (!feasible_[full]) return std::nullopt;
    TreeCutDecomposition d;
    build(full, -1, d);
    return d;
  }

 private:
  struct Choice {
    Mask bag = 0;
    std::vector<Mask> blocks;
  };

  void charge() {
    if (++budget_.spent > budget_.limit) throw Error(ErrorKind::kBudgetExhausted, "exact tree-cut width search");
  }

  bool try_set(Mask s) {
    for (Mask x = s;; x = (x - 1) & s) {
      if (std::popcount(x) <= w_) {
        std::vector<Mask> blocks;
        if (split(s, x, s & ~x, blocks)) return true;
      }
      if (x == 0) break;
    }
    return false;
  }

  // Partitions `rest` into feasible blocks (each containing its lowest
  // vertex in turn) and tests the torso at the node with bag x.
  bool split(Mask s, Mask x, Mask rest, std::vector<Mask>& blocks) {
    charge();
    if (rest == 0) {
      if (x == 0 && blocks.size() < 2) return false;
      if (!center_ok(s, x, blocks)) return false;
      choice_[s] = Choice{x, blocks};
      return true;
    }
    const Mask low = rest & (~rest + 1);
    const Mask others = rest & ~low;
    for (Mask sub = others;; sub = (sub - 1) & others) {
      const Mask block = sub | low;
      if (feasible_[block] && block != s) {
        blocks.push_back(block);
        if (split(s, x, rest & ~block, blocks)) return true;
        blocks.pop_back();
      }
      if (sub == 0) break;
    }
    return false;
  }

  bool center_ok(Mask s, Mask x, const std::vector<Mask>& blocks) const {
    const Mask full = (Mask{1} << g_.n) - 1;
    const Mask outside = full & ~s;
    std::vector<int> bag;
    for (int i = 0; i < g_.n; ++i) {
      if (x >> i & 1) bag.push_back(i);
    }
    std::vector<Mask> groups = blocks;
    if (outside) groups.push_back(outside);
    if (static_cast<int>(bag.size() + groups.size()) <= w_) return true;
    const int size = static_cast<int>(bag.size() + groups.size());
    std::vector<std::vector<int>> m(size, std::vector<int>(size, 0));
    for (std::size_t a = 0; a < bag.size(); ++a) {
      for (std::size_t b = 0; b < bag.size(); ++b) m[a][b] = g_.m[bag[a]][bag[b]];
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const int zi = static_cast<int>(bag.size() + i);
      for (std::size_t a = 0; a < bag.size(); ++a) {
        int c = g_.between(Mask{1} << bag[a], groups[i]);
        m[a][zi] = m[zi][a] = c;
      }
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const int zj = static_cast<int>(bag.size() + j);
        int c = g_.between(groups[i], groups[j]);
        m[zi][zj] = m[zj][zi] = c;
      }
    }
    return dense_center_size(std::move(m), static_cast<int>(bag.size())) <= w_;
  }

  void build(Mask s, int parent, TreeCutDecomposition& d) {
    const int node = static_cast<int>(d.size());
    d.parent.push_back(parent);
    d.bags.push_back(g_.to_set(choice_[s].bag));
    for (Mask b : choice_[s].blocks) build(b, node, d);
  }

  const SmallGraph& g_;
  SearchBudget& budget_;
  int w_ = 0;
  std::vector<char> feasible_;
  std::vector<Choice> choice_;
};

}  // namespace detail

// Smallest w admitting a decomposition, searched bottom-up over vertex
// subsets: a subset is feasible when some bag X and some split of the rest
// into feasible child subsets of adhesion <= w give a 3-center of order <= w.
inline ExactTcw exact_tcw_small(const Multigraph& g, SearchBudget& budget, int cap = kDefaultExactCap) {
  if (static_cast<int>(g.num_vertices()) > cap) {
    throw Error(ErrorKind::kTooLarge, "exact tree-cut width limited to " + std::to_string(cap) + " vertices");
  }
  detail::SmallGraph small(g);
  detail::TcwSolver solver(small, budget);
  for (int w = 0;; ++w) {
    if (auto d = solver.solve(w)) return ExactTcw{w, *d};
  }
}

inline ExactTcw exact_tcw_small(const Multigraph& g, int cap = kDefaultExactCap) {
  SearchBudget unlimited;
  return exact_tcw_small(g, unlimited, cap);
}

namespace detail {

class TpwSolver {
 public:
  TpwSolver(const SmallGraph& g, SearchBudget& budget) : g_(g), budget_(budget) {}

  // Best width of a partition of G[s] rooted at bag y, where every
  // component of G[s - y] hangs below y.
  int rooted(Mask s, Mask y) {
    auto key = std::make_pair(s, y);
    if (auto it = rooted_memo_.find(key); it != rooted_memo_.end()) return it->second;
    charge();
    int best = std::popcount(y);
    Mask rest = s & ~y;
    while (rest) {
      Mask comp = component(rest, rest & (~rest + 1));
      rest &= ~comp;
      int edges = g_.between(y, comp);
      int below = anchored(comp, g_.neighbors(y) & comp);
      best = std::max({best, edges, below});
    }
    rooted_memo_[key] = best;
    return best;
  }

  // Best width of a partition of G[d] whose root bag contains `required`.
  int anchored(Mask d, Mask required) {
    auto key = std::make_pair(d, required);
    if (auto it = anchored_memo_.find(key); it != anchored_memo_.end()) return it->second.first;
    int best = std::numeric_limits<int>::max();
    Mask pick = 0;
    const Mask free = d & ~required;
    for (Mask extra = free;; extra = (extra - 1) & free) {
      Mask y = required | extra;
      if (y != 0) {
        int value = rooted(d, y);
        if (value < best || (value == best && y < pick)) {
          best = value;
          pick = y;
        }
      }
      if (extra == 0) break;
    }
    anchored_memo_[key] = {best, pick};
    return best;
  }

  void build(Mask d, Mask required, int parent, TreePartition& out) {
    anchored(d, required);
    const Mask y = anchored_memo_.at({d, required}).second;
    const int node = static_cast<int>(out.size());
    out.parent.push_back(parent);
    out.bags.push_back(g_.to_set(y));
    Mask rest = d & ~y;
    while (rest) {
      Mask comp = component(rest, rest & (~rest + 1));
      rest &= ~comp;
      build(comp, g_.neighbors(y) & comp, node, out);
    }
  }

  Mask component(Mask within, Mask seed) const {
    Mask comp = seed;
    for (;;) {
      Mask grown = comp | (g_.neighbors(comp) & within);
      if (grown == comp) return comp;
      comp = grown;
    }
  }

 private:
  void charge() {
    if (++budget_.spent > budget_.limit) throw Error(ErrorKind::kBudgetExhausted, "exact tree-partition width search");
  }

  const SmallGraph& g_;
  SearchBudget& budget_;
  std::map<std::pair<Mask, Mask>, int> rooted_memo_;
  std::map<std::pair<Mask, Mask>, std::pair<int, Mask>> anchored_memo_;
};

}  // namespace detail

// Components of G hang below the root bag of the first one.
inline ExactTpw exact_tpw_small(const Multigraph& g, SearchBudget& budget, int cap = kDefaultExactCap) {
  if (static_cast<int>(g.num_vertices()) > cap) {
    throw Error(ErrorKind::kTooLarge, "exact tree-partition width limited to " + std::to_string(cap) + " vertices");
  }
  detail::SmallGraph small(g);
  detail::TpwSolver solver(small, budget);
  ExactTpw out;
  if (small.n == 0) {
    out.partition = TreePartition{{{-1}, {{}}}};
    return out;
  }
  const detail::Mask full = (detail::Mask{1} << small.n) - 1;
  detail::Mask rest = full;
  while (rest) {
    detail::Mask comp = solver.component(rest, rest & (~rest + 1));
    rest &= ~comp;
    out.width = std::max(out.width, solver.anchored(comp, 0));
    solver.build(comp, 0, out.partition.size() == 0 ? -1 : 0, out.partition);
  }
  return out;
}

inline ExactTpw exact_tpw_small(const Multigraph& g, int cap = kDefaultExactCap) {
  SearchBudget unlimited;
  return exact_tpw_small(g, unlimited, cap);
}

// Minimum over elimination orderings of the largest later-neighborhood, on
// the underlying simple graph; -1 for the empty graph.
inline int exact_treewidth_small(const Multigraph& g, int cap = kDefaultTreewidthCap) {
  const int n = static_cast<int>(g.num_vertices());
  if (n > cap) throw Error(ErrorKind::kTooLarge, "exact treewidth limited to " + std::to_string(cap) + " vertices");
  if (n == 0) return -1;
  detail::SmallGraph small(g);
  using detail::Mask;
  // q(s, v): vertices outside s + v reachable from v through s.
  auto q = [&](Mask s, int v) {
    Mask seen = Mask{1} << v;
    Mask frontier = seen;
    Mask reach = 0;
    while (frontier) {
      Mask next = small.neighbors(frontier) & ~seen;
      seen |= next;
      reach |= next & ~s;
      frontier = next & s;
    }
    return std::popcount(reach);
  };
  const Mask full = (Mask{1} << n) - 1;
  std::vector<int> tw(std::size_t{1} << n, std::numeric_limits<int>::max());
  tw[0] = -1;
  for (Mask s = 1; s <= full; ++s) {
    for (int v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      Mask before = s & ~(Mask{1} << v);
      tw[s] = std::min(tw[s], std::max(tw[before], q(before, v)));
    }
  }
  return tw[full];
}

// ---------------------------------------------------------------------------
// Heuristic

namespace detail {

// One vertex per node along depth-first trees; components after the first
// hang below the first root.
inline TreeCutDecomposition dfs_decomposition(const Multigraph& g) {
  TreeCutDecomposition d;
  std::map<VertexId, int> node;
  int first_root = -1;
  for (const auto& comp : connected_components(g)) {
    std::function<void(VertexId, int)> visit = [&](VertexId v, int parent) {
      const int t = static_cast<int>(d.size());
      node[v] = t;
      d.parent.push_back(parent);
      d.bags.push_back({v});
      for (const auto& [w, m] : g.neighbors(v)) {
        if (!node.count(w)) visit(w, t);
      }
    };
    visit(comp.front(), first_root);
    if (first_root < 0) first_root = 0;
  }
  if (d.size() == 0) d = TreeCutDecomposition{{{-1}, {{}}}};
  return d;
}

}  // namespace detail

inline TreeCutDecomposition single_bag(const Multigraph& g) {
  auto vs = g.vertices();
  return TreeCutDecomposition{{{-1}, {std::set<VertexId>(vs.begin(), vs.end())}}};
}

// The narrower of a depth-first-tree decomposition and a single bag.
inline TreeCutDecomposition heuristic_tcd(const Multigraph& g) {
  TreeCutDecomposition dfs = detail::dfs_decomposition(g);
  TreeCutDecomposition one = single_bag(g);
  return validate_tcd(g, dfs).width <= validate_tcd(g, one).width ? dfs : one;
}

}  // namespace iep
