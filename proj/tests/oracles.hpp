#pragma once

// Brute-force reference implementations used only by the tests. They touch
// nothing but the basic Multigraph accessors so that they stay independent
// of the search engine and the decomposition solvers.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "iep/iep.hpp"

namespace oracle {

using iep::EdgeRef;
using iep::ModelMode;
using iep::Multigraph;
using iep::VertexId;

// All (phi, path system) pairs realizing H in G; the callback gets the
// branch map, the edges used and the vertices touched. Returning true
// from the callback stops the enumeration.
struct Realization {
  std::map<VertexId, VertexId> phi;
  std::set<EdgeRef> edges;
  std::set<VertexId> vertices;
};

inline bool enumerate_realizations(const Multigraph& g, const Multigraph& h, ModelMode mode,
                                   const std::function<bool(const Realization&)>& visit) {
  const auto hv = h.vertices();
  const auto gv = g.vertices();
  const auto hedges = h.edge_instances();
  std::map<VertexId, VertexId> phi;
  std::set<VertexId> image;
  std::set<EdgeRef> used;
  std::set<VertexId> inner;  // internal path vertices so far
  std::vector<VertexId> path_vertices;

  std::function<bool(std::size_t)> route;
  std::function<bool(std::size_t, VertexId, VertexId, std::vector<EdgeRef>&, std::set<VertexId>&)> extend;

  auto finish = [&]() {
    Realization r;
    r.phi = phi;
    r.edges = used;
    for (const auto& [x, v] : phi) r.vertices.insert(v);
    for (const auto& e : used) {
      r.vertices.insert(e.u);
      r.vertices.insert(e.v);
    }
    return visit(r);
  };

  extend = [&](std::size_t i, VertexId at, VertexId goal, std::vector<EdgeRef>& path, std::set<VertexId>& on) -> bool {
    if (at == goal) return route(i + 1);
    for (const auto& [w, m] : g.neighbors(at)) {
      if (on.count(w)) continue;
      if (w != goal) {
        if (mode != ModelMode::kImmersion && image.count(w)) continue;
        if (mode == ModelMode::kTopologicalMinor && inner.count(w)) continue;
      }
      for (int k = 1; k <= m; ++k) {
        EdgeRef e = iep::make_edge(at, w, k);
        if (used.count(e)) continue;
        used.insert(e);
        path.push_back(e);
        on.insert(w);
        bool added_inner = false;
        if (w != goal && !inner.count(w)) {
          inner.insert(w);
          added_inner = true;
        }
        bool stop = extend(i, w, goal, path, on);
        if (added_inner) inner.erase(w);
        on.erase(w);
        path.pop_back();
        used.erase(e);
        if (stop) return true;
      }
    }
    return false;
  };

  route = [&](std::size_t i) -> bool {
    if (i == hedges.size()) return finish();
    const auto& he = hedges[i];
    VertexId from = phi.at(he.u);
    VertexId to = phi.at(he.v);
    std::vector<EdgeRef> path;
    std::set<VertexId> on{from};
    return extend(i, from, to, path, on);
  };

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == hv.size()) return route(0);
    for (VertexId v : gv) {
      if (image.count(v)) continue;
      phi[hv[i]] = v;
      image.insert(v);
      bool stop = place(i + 1);
      image.erase(v);
      phi.erase(hv[i]);
      if (stop) return true;
    }
    return false;
  };
  return place(0);
}

inline bool has_immersion(const Multigraph& g, const Multigraph& h, ModelMode mode = ModelMode::kImmersion) {
  return enumerate_realizations(g, h, mode, [](const Realization&) { return true; });
}

// Distinct edge sets (or vertex sets) of all realizations.
inline std::set<std::set<EdgeRef>> expansion_edge_sets(const Multigraph& g, const Multigraph& h) {
  std::set<std::set<EdgeRef>> out;
  enumerate_realizations(g, h, ModelMode::kImmersion, [&](const Realization& r) {
    out.insert(r.edges);
    return false;
  });
  return out;
}

inline std::set<std::set<VertexId>> expansion_vertex_sets(const Multigraph& g, const Multigraph& h) {
  std::set<std::set<VertexId>> out;
  enumerate_realizations(g, h, ModelMode::kImmersion, [&](const Realization& r) {
    out.insert(r.vertices);
    return false;
  });
  return out;
}

template <class T>
int max_disjoint_family(const std::set<std::set<T>>& family) {
  std::vector<std::set<T>> items(family.begin(), family.end());
  int best = 0;
  std::set<T> taken;
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int count) {
    best = std::max(best, count);
    if (count + static_cast<int>(items.size() - i) <= best) return;
    for (std::size_t j = i; j < items.size(); ++j) {
      bool free = std::none_of(items[j].begin(), items[j].end(), [&](const T& x) { return taken.count(x) > 0; });
      if (!free) continue;
      for (const auto& x : items[j]) taken.insert(x);
      go(j + 1, count + 1);
      for (const auto& x : items[j]) taken.erase(x);
    }
  };
  go(0, 0);
  return best;
}

inline int edge_packing(const Multigraph& g, const Multigraph& h) { return max_disjoint_family(expansion_edge_sets(g, h)); }

inline int vertex_packing(const Multigraph& g, const Multigraph& h) {
  return max_disjoint_family(expansion_vertex_sets(g, h));
}

// Smallest s such that some s-subset of edge instances, taken in
// lexicographic order, leaves no immersion of H.
inline int edge_cover(const Multigraph& g, const Multigraph& h) {
  const auto all = g.edge_instances();
  const int n = static_cast<int>(all.size());
  for (int s = 0; s <= n; ++s) {
    std::vector<int> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Multigraph rest = g;
      for (int i : pick) rest.remove_edge(all[i].u, all[i].v, 1);
      if (!has_immersion(rest, h)) return s;
      int i = s - 1;
      while (i >= 0 && pick[i] == n - s + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return n;
}

inline int vertex_cover(const Multigraph& g, const Multigraph& h) {
  const auto all = g.vertices();
  const int n = static_cast<int>(all.size());
  for (int s = 0; s <= n; ++s) {
    std::vector<int> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Multigraph rest = g;
      for (int i : pick) rest.remove_vertex(all[i]);
      if (!has_immersion(rest, h)) return s;
      int i = s - 1;
      while (i >= 0 && pick[i] == n - s + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Trees and decomposition widths

// Every labeled tree on m nodes as a parent array rooted at node 0,
// decoded from Pruefer sequences.
inline std::vector<std::vector<int>> all_trees(int m) {
  std::vector<std::vector<int>> out;
  if (m == 1) return {{-1}};
  if (m == 2) return {{-1, 0}};
  std::vector<int> seq(m - 2, 0);
  while (true) {
    std::vector<int> degree(m, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::vector<int>> adj(m);
    std::vector<int> deg = degree;
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      adj[leaf].push_back(x);
      adj[x].push_back(leaf);
      --deg[leaf];
      --deg[x];
    }
    std::vector<int> last;
    for (int v = 0; v < m; ++v) {
      if (deg[v] == 1) last.push_back(v);
    }
    adj[last[0]].push_back(last[1]);
    adj[last[1]].push_back(last[0]);

    std::vector<int> parent(m, -2);
    parent[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int c : adj[t]) {
        if (parent[c] == -2) {
          parent[c] = t;
          stack.push_back(c);
        }
      }
    }
    out.push_back(parent);

    int i = m - 3;
    while (i >= 0 && seq[i] == m - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

// Deletes degree <= 1 vertices outside X and suppresses degree-2 ones
// until nothing changes. Works on a plain count matrix.
inline int three_center_size(std::vector<std::vector<int>> m, const std::vector<bool>& in_x) {
  const int n = static_cast<int>(m.size());
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v] || in_x[v]) continue;
      int deg = 0;
      for (int w = 0; w < n; ++w) deg += alive[w] ? m[v][w] : 0;
      if (deg <= 1) {
        alive[v] = false;
        changed = true;
      } else if (deg == 2) {
        std::vector<int> ends;
        for (int w = 0; w < n; ++w) {
          if (alive[w]) {
            for (int k = 0; k < m[v][w]; ++k) ends.push_back(w);
          }
        }
        alive[v] = false;
        if (ends[0] != ends[1]) {
          ++m[ends[0]][ends[1]];
          ++m[ends[1]][ends[0]];
        }
        changed = true;
      }
    }
  }
  return static_cast<int>(std::count(alive.begin(), alive.end(), true));
}

struct Dense {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> m;
};

inline Dense dense(const Multigraph& g) {
  Dense d;
  d.ids = g.vertices();
  const int n = static_cast<int>(d.ids.size());
  d.m.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) d.m[a][b] = g.mult(d.ids[a], d.ids[b]);
    }
  }
  return d;
}

// Width of the tree-cut decomposition given by `parent` and a node per
// vertex, recomputed from the definitions.
inline int tcd_width(const Dense& g, const std::vector<int>& parent, const std::vector<int>& node_of) {
  const int n = static_cast<int>(g.ids.size());
  const int t_count = static_cast<int>(parent.size());
  auto in_subtree = [&](int x, int t) {
    while (x != -1) {
      if (x == t) return true;
      x = parent[x];
    }
    return false;
  };
  int width = 0;
  for (int t = 0; t < t_count; ++t) {
    if (parent[t] != -1) {
      int adh = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (in_subtree(node_of[a], t) != in_subtree(node_of[b], t)) adh += g.m[a][b];
        }
      }
      width = std::max(width, adh);
    }
    // part of each vertex in the torso at t: -1 inside X_t, else an id
    // for the component of T - t holding its node
    std::vector<int> part(n);
    std::vector<int> children;
    for (int c = 0; c < t_count; ++c) {
      if (parent[c] == t) children.push_back(c);
    }
    for (int v = 0; v < n; ++v) {
      if (node_of[v] == t) {
        part[v] = -1;
        continue;
      }
      part[v] = static_cast<int>(children.size());  // parent side
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (in_subtree(node_of[v], children[i])) part[v] = static_cast<int>(i);
      }
    }
    std::vector<int> inside;
    for (int v = 0; v < n; ++v) {
      if (part[v] == -1) inside.push_back(v);
    }
    const int k = static_cast<int>(inside.size());
    const int size = k + static_cast<int>(children.size()) + 1;
    std::vector<std::vector<int>> tm(size, std::vector<int>(size, 0));
    auto slot = [&](int v) {
      if (part[v] == -1) return static_cast<int>(std::find(inside.begin(), inside.end(), v) - inside.begin());
      return k + part[v];
    };
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int sa = slot(a), sb = slot(b);
        if (sa == sb) continue;
        tm[sa][sb] += g.m[a][b];
        tm[sb][sa] += g.m[a][b];
      }
    }
    std::vector<bool> in_x(size, false);
    for (int i = 0; i < k; ++i) in_x[i] = true;
    width = std::max(width, three_center_size(tm, in_x));
  }
  return width;
}

// Minimum over all trees with up to `max_nodes` nodes and all placements.
inline int tree_cut_width(const Multigraph& graph, int max_nodes) {
  Dense g = dense(graph);
  const int n = static_cast<int>(g.ids.size());
  int best = n;
  for (int m = 1; m <= max_nodes; ++m) {
    for (const auto& parent : all_trees(m)) {
      std::vector<int> node_of(n, 0);
      while (true) {
        best = std::min(best, tcd_width(g, parent, node_of));
        int i = 0;
        while (i < n && node_of[i] == m - 1) node_of[i++] = 0;
        if (i == n) break;
        ++node_of[i];
      }
    }
  }
  return best;
}

// Minimum tree-partition width over trees with up to |V| nodes.
inline int tree_partition_width(const Multigraph& graph) {
  Dense g = dense(graph);
  const int n = static_cast<int>(g.ids.size());
  int best = n;
  for (int m = 2; m <= n; ++m) {
    for (const auto& parent : all_trees(m)) {
      std::vector<int> node_of(n, 0);
      while (true) {
        std::vector<int> bag(m, 0);
        for (int v = 0; v < n; ++v) ++bag[node_of[v]];
        bool ok = std::all_of(bag.begin(), bag.end(), [](int s) { return s > 0; });
        int width = ok ? *std::max_element(bag.begin(), bag.end()) : 0;
        std::map<std::pair<int, int>, int> across;
        for (int a = 0; a < n && ok; ++a) {
          for (int b = a + 1; b < n && ok; ++b) {
            if (g.m[a][b] == 0) continue;
            int x = node_of[a], y = node_of[b];
            if (x == y) continue;
            if (parent[x] != y && parent[y] != x) {
              ok = false;
            } else {
              across[{std::min(x, y), std::max(x, y)}] += g.m[a][b];
            }
          }
        }
        if (ok) {
          for (const auto& [f, c] : across) width = std::max(width, c);
          best = std::min(best, width);
        }
        int i = 0;
        while (i < n && node_of[i] == m - 1) node_of[i++] = 0;
        if (i == n) break;
        ++node_of[i];
      }
    }
  }
  return best;
}

// Treewidth as the best elimination width over all vertex orders.
inline int treewidth_by_orders(const Multigraph& graph) {
  Dense g = dense(graph);
  const int n = static_cast<int>(g.ids.size());
  if (n == 0) return -1;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = n - 1;
  do {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) adj[a][b] = g.m[a][b] > 0;
    }
    std::vector<bool> gone(n, false);
    int width = 0;
    for (int v : order) {
      std::vector<int> nb;
      for (int w = 0; w < n; ++w) {
        if (!gone[w] && w != v && adj[v][w]) nb.push_back(w);
      }
      width = std::max(width, static_cast<int>(nb.size()));
      for (int a : nb) {
        for (int b : nb) {
          if (a != b) adj[a][b] = true;
        }
      }
      gone[v] = true;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Isomorphism-level helpers

inline std::vector<std::vector<int>> canonical_matrix(const Multigraph& graph) {
  Dense g = dense(graph);
  const int n = static_cast<int>(g.ids.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> best;
  do {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) m[perm[a]][perm[b]] = g.m[a][b];
    }
    if (best.empty() || m < best) best = m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  return a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges() &&
         canonical_matrix(a) == canonical_matrix(b);
}

}  // namespace oracle
