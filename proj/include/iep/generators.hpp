#pragma once

// Graph families: grids, walls, enriched walls, the two gadget
// constructions (G+ and G*), disjoint sub-wall tilings, seeded random
// instances and a handful of small named pattern graphs.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "iep/multigraph.hpp"

namespace iep {

struct Coord {
  int x = 0;  // row
  int y = 0;  // column

  auto operator<=>(const Coord&) const = default;
};

struct Coordinates {
  std::map<VertexId, Coord> of;
  std::map<Coord, VertexId> at;

  void set(VertexId v, Coord c) {
    of[v] = c;
    at[c] = v;
  }
  std::optional<VertexId> find(Coord c) const {
    auto it = at.find(c);
    if (it == at.end()) return std::nullopt;
    return it->second;
  }
  VertexId vertex(Coord c) const {
    auto v = find(c);
    if (!v) throw Error(ErrorKind::kInvalidArgument, "no vertex at (" + std::to_string(c.x) + "," + std::to_string(c.y) + ")");
    return *v;
  }
};

struct GridGraph {
  Multigraph graph;
  Coordinates coords;
};

struct Wall {
  int height = 0;
  Multigraph graph;
  Coordinates coords;
  std::vector<std::vector<VertexId>> vertical_paths;    // P^(v)_1 .. P^(v)_k
  std::vector<std::vector<VertexId>> horizontal_paths;  // P^(h)_1 .. P^(h)_{k+1}
  std::set<std::pair<VertexId, VertexId>> doubled;      // non-empty only for enriched walls
};

namespace detail {

// Builds a simple graph over the surviving coordinates with ids 1..N in
// lexicographic (row, column) order.
inline GridGraph build_from_coords(const std::set<Coord>& cells, const std::set<std::pair<Coord, Coord>>& links) {
  GridGraph out;
  for (const Coord& c : cells) out.coords.set(out.graph.add_vertex(), c);
  for (const auto& [a, b] : links) out.graph.add_edge(out.coords.vertex(a), out.coords.vertex(b));
  return out;
}

inline std::set<std::pair<VertexId, VertexId>> path_edges(const std::vector<VertexId>& path) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.insert(std::minmax(path[i], path[i + 1]));
  return out;
}

}  // namespace detail

inline GridGraph grid(int k, int r) {
  if (k < 2 || r < 2) throw Error(ErrorKind::kBadSize, "grid needs k, r >= 2");
  std::set<Coord> cells;
  std::set<std::pair<Coord, Coord>> links;
  for (int x = 1; x <= k; ++x) {
    for (int y = 1; y <= r; ++y) {
      cells.insert({x, y});
      if (x < k) links.insert({{x, y}, {x + 1, y}});
      if (y < r) links.insert({{x, y}, {x, y + 1}});
    }
  }
  return detail::build_from_coords(cells, links);
}

inline Wall wall(int k) {
  if (k < 2) throw Error(ErrorKind::kBadSize, "wall needs k >= 2");
  const int rows = k + 1;
  const int cols = 2 * k + 2;

  std::set<Coord> cells;
  std::set<std::pair<Coord, Coord>> links;
  for (int x = 1; x <= rows; ++x) {
    for (int y = 1; y <= cols; ++y) {
      cells.insert({x, y});
      if (y < cols) links.insert({{x, y}, {x, y + 1}});
      if (x < rows && (x + y) % 2 == 0) links.insert({{x, y}, {x + 1, y}});
    }
  }

  // Degree-1 pruning, iterated to a fixed point.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Coord, int> degree;
    for (const auto& [a, b] : links) {
      ++degree[a];
      ++degree[b];
    }
    for (auto it = cells.begin(); it != cells.end();) {
      if (degree[*it] == 1) {
        Coord dead = *it;
        std::erase_if(links, [&](const auto& l) { return l.first == dead || l.second == dead; });
        it = cells.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  GridGraph base = detail::build_from_coords(cells, links);
  Wall w;
  w.height = k;
  w.graph = std::move(base.graph);
  w.coords = std::move(base.coords);

  for (int j = 1; j <= k; ++j) {
    // The strip of columns 2j-1, 2j is itself a path; walk it from (1,2j).
    VertexId start = w.coords.vertex({1, 2 * j});
    VertexId goal = w.coords.vertex({rows, 2 * j});
    std::map<VertexId, VertexId> parent;
    std::vector<VertexId> queue{start};
    parent[start] = start;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& [nb, m] : w.graph.neighbors(queue[i])) {
        int col = w.coords.of.at(nb).y;
        if ((col == 2 * j || col == 2 * j - 1) && !parent.count(nb)) {
          parent[nb] = queue[i];
          queue.push_back(nb);
        }
      }
    }
    std::vector<VertexId> path{goal};
    while (path.back() != start) path.push_back(parent.at(path.back()));
    std::reverse(path.begin(), path.end());
    w.vertical_paths.push_back(std::move(path));
  }
  for (int i = 1; i <= rows; ++i) {
    std::vector<VertexId> row;
    for (int y = 1; y <= cols; ++y) {
      if (auto v = w.coords.find({i, y})) row.push_back(*v);
    }
    w.horizontal_paths.push_back(std::move(row));
  }
  return w;
}

// W+_k: every edge lying on both a vertical and a horizontal path gets a
// second copy.
inline Wall wall_plus(int k) {
  Wall w = wall(k);
  std::set<std::pair<VertexId, VertexId>> vertical;
  std::set<std::pair<VertexId, VertexId>> horizontal;
  for (const auto& p : w.vertical_paths) {
    auto e = detail::path_edges(p);
    vertical.insert(e.begin(), e.end());
  }
  for (const auto& p : w.horizontal_paths) {
    auto e = detail::path_edges(p);
    horizontal.insert(e.begin(), e.end());
  }
  for (const auto& e : vertical) {
    if (horizontal.count(e)) {
      w.graph.add_edge(e.first, e.second);
      w.doubled.insert(e);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Gadget constructions

struct PlusGraph {
  Multigraph graph;
  std::set<VertexId> original;
  std::map<VertexId, std::pair<VertexId, VertexId>> gadget;  // v -> (v', v'')
};

inline PlusGraph plus_graph(const Multigraph& g) {
  PlusGraph out;
  out.graph = g;
  for (VertexId v : g.vertices()) {
    out.original.insert(v);
    VertexId a = out.graph.add_vertex();
    VertexId b = out.graph.add_vertex();
    out.graph.add_edge(a, b, 2);
    out.graph.add_edge(v, a);
    out.graph.add_edge(v, b);
    out.gadget[v] = {a, b};
  }
  return out;
}

// Zone Z_{v,i}: the gadget {v, v_i', v_i''}.
struct Zone {
  VertexId center;
  int index = 0;
  VertexId first;
  VertexId second;
};

struct StarZoneMap {
  std::vector<Zone> zones;
  std::set<VertexId> original;
  std::map<VertexId, std::size_t> zone_of_vertex;  // auxiliary vertex -> zone

  bool is_original_vertex(VertexId v) const { return original.count(v) != 0; }
  bool is_original_edge(const EdgeRef& e) const { return is_original_vertex(e.u) && is_original_vertex(e.v); }

  std::optional<std::size_t> zone_of_edge(const EdgeRef& e) const {
    for (VertexId x : {e.u, e.v}) {
      auto it = zone_of_vertex.find(x);
      if (it != zone_of_vertex.end()) return it->second;
    }
    return std::nullopt;
  }

  std::vector<EdgeRef> zone_edges(std::size_t z) const {
    const Zone& zone = zones.at(z);
    return {make_edge(zone.center, zone.first), make_edge(zone.center, zone.second),
            make_edge(zone.first, zone.second, 1), make_edge(zone.first, zone.second, 2)};
  }
};

struct StarGraph {
  Multigraph graph;
  StarZoneMap zones;
};

// One gadget per unit of multidegree of every vertex.
inline StarGraph star_graph(const Multigraph& g) {
  StarGraph out;
  out.graph = g;
  for (VertexId v : g.vertices()) out.zones.original.insert(v);
  for (VertexId v : g.vertices()) {
    const int count = g.mdeg(v);
    for (int i = 1; i <= count; ++i) {
      VertexId a = out.graph.add_vertex();
      VertexId b = out.graph.add_vertex();
      out.graph.add_edge(a, b, 2);
      out.graph.add_edge(v, a);
      out.graph.add_edge(v, b);
      out.zones.zone_of_vertex[a] = out.zones.zones.size();
      out.zones.zone_of_vertex[b] = out.zones.zones.size();
      out.zones.zones.push_back(Zone{v, i, a, b});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disjoint sub-wall tiling

struct EmbeddedWall {
  int row_offset = 0;
  int col_offset = 0;
  std::map<VertexId, VertexId> embedding;  // tile vertex -> host vertex
  std::set<VertexId> vertices;             // host vertices covered
};

struct SubwallTiling {
  Wall host;
  Wall tile;
  std::vector<EmbeddedWall> subwalls;
};

inline int ceil_sqrt(int n) {
  int s = 0;
  while (s * s < n) ++s;
  return s;
}

// Tiles sit on a ceil(sqrt(k+1)) x ceil(sqrt(k+1)) lattice with (h+1)-row and
// (2h+2)-column strides. Odd row offsets flip the brick parity, which a
// one-column shift restores.
inline SubwallTiling disjoint_subwalls(int h, int k) {
  if (h < 2 || k < 0) throw Error(ErrorKind::kBadSize, "disjoint_subwalls needs h >= 2, k >= 0");
  const int side = ceil_sqrt(k + 1);
  SubwallTiling out;
  out.host = wall((h + 1) * side);
  out.tile = wall(h);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      EmbeddedWall sub;
      sub.row_offset = a * (h + 1);
      sub.col_offset = b * (2 * h + 2) + (sub.row_offset % 2);
      for (const auto& [v, c] : out.tile.coords.of) {
        VertexId image = out.host.coords.vertex({c.x + sub.row_offset, c.y + sub.col_offset});
        sub.embedding[v] = image;
        sub.vertices.insert(image);
      }
      for (const auto& e : out.tile.graph.multiedges()) {
        if (out.host.graph.mult(sub.embedding.at(e.u), sub.embedding.at(e.v)) < e.mult) {
          throw Error(ErrorKind::kInvariantViolation, "tile edge missing from host wall");
        }
      }
      out.subwalls.push_back(std::move(sub));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded random instances (generator version 1: std::mt19937_64 seeded with
// the given seed, bounded draws by rejection sampling, see uniform_below).

inline constexpr int kRandomGeneratorVersion = 1;

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

namespace detail {

// Adds `count` edge instances, each drawn uniformly among the remaining
// free multiplicity slots.
inline void add_random_instances(Multigraph& g, int count, int max_mult, std::mt19937_64& rng) {
  auto verts = g.vertices();
  for (int added = 0; added < count; ++added) {
    std::uint64_t free_slots = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = i + 1; j < verts.size(); ++j) free_slots += max_mult - g.mult(verts[i], verts[j]);
    }
    std::uint64_t pick = uniform_below(rng, free_slots);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        std::uint64_t slots = max_mult - g.mult(verts[i], verts[j]);
        if (pick < slots) {
          g.add_edge(verts[i], verts[j]);
          i = verts.size();
          break;
        }
        pick -= slots;
      }
    }
  }
}

}  // namespace detail

inline Multigraph random_multigraph(int n, int m, int max_mult, std::uint64_t seed) {
  if (n < 2 || m < 0 || max_mult < 1) throw Error(ErrorKind::kBadSize, "random_multigraph needs n >= 2, m >= 0, max_mult >= 1");
  const long capacity = static_cast<long>(max_mult) * n * (n - 1) / 2;
  if (m > capacity) {
    throw Error(ErrorKind::kInfeasible, std::to_string(m) + " edges exceed capacity " + std::to_string(capacity));
  }
  std::mt19937_64 rng(seed);
  Multigraph g(static_cast<std::size_t>(n));
  detail::add_random_instances(g, m, max_mult, rng);
  return g;
}

// Random spanning tree (each vertex attaches to a uniformly chosen earlier
// one) plus m-(n-1) further random instances.
inline Multigraph random_connected_multigraph(int n, int m, int max_mult, std::uint64_t seed) {
  if (n < 1 || max_mult < 1) throw Error(ErrorKind::kBadSize, "random_connected_multigraph needs n >= 1, max_mult >= 1");
  const long capacity = static_cast<long>(max_mult) * n * (n - 1) / 2;
  if (m < n - 1 || m > capacity) {
    throw Error(ErrorKind::kInfeasible, "edge count " + std::to_string(m) + " outside [n-1, capacity]");
  }
  std::mt19937_64 rng(seed);
  Multigraph g(static_cast<std::size_t>(n));
  for (int v = 2; v <= n; ++v) {
    auto parent = static_cast<std::uint32_t>(1 + uniform_below(rng, static_cast<std::uint64_t>(v - 1)));
    g.add_edge(VertexId{parent}, VertexId{static_cast<std::uint32_t>(v)});
  }
  detail::add_random_instances(g, m - (n - 1), max_mult, rng);
  return g;
}

// ---------------------------------------------------------------------------
// Small named graphs

inline Multigraph theta(int r) {
  if (r < 1) throw Error(ErrorKind::kBadSize, "theta needs r >= 1");
  Multigraph g(2);
  g.add_edge(VertexId{1}, VertexId{2}, r);
  return g;
}

inline Multigraph path_graph(int n) {
  if (n < 1) throw Error(ErrorKind::kBadSize, "path needs n >= 1");
  Multigraph g(static_cast<std::size_t>(n));
  for (std::uint32_t i = 1; i < static_cast<std::uint32_t>(n); ++i) g.add_edge(VertexId{i}, VertexId{i + 1});
  return g;
}

inline Multigraph cycle_graph(int n) {
  if (n < 3) throw Error(ErrorKind::kBadSize, "cycle needs n >= 3");
  Multigraph g = path_graph(n);
  g.add_edge(VertexId{1}, VertexId{static_cast<std::uint32_t>(n)});
  return g;
}

// K_{1,n}, center is vertex 1.
inline Multigraph star(int leaves) {
  if (leaves < 1) throw Error(ErrorKind::kBadSize, "star needs at least one leaf");
  Multigraph g(static_cast<std::size_t>(leaves + 1));
  for (std::uint32_t i = 2; i <= static_cast<std::uint32_t>(leaves + 1); ++i) g.add_edge(VertexId{1}, VertexId{i});
  return g;
}

inline Multigraph complete_graph(int n) {
  if (n < 1) throw Error(ErrorKind::kBadSize, "complete graph needs n >= 1");
  Multigraph g(static_cast<std::size_t>(n));
  for (std::uint32_t i = 1; i <= static_cast<std::uint32_t>(n); ++i) {
    for (std::uint32_t j = i + 1; j <= static_cast<std::uint32_t>(n); ++j) g.add_edge(VertexId{i}, VertexId{j});
  }
  return g;
}

// Disjoint union; the second graph's ids are shifted past the first's.
inline Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  Multigraph out = a;
  std::map<VertexId, VertexId> to;
  for (VertexId v : b.vertices()) to[v] = out.add_vertex();
  for (const auto& e : b.multiedges()) out.add_edge(to.at(e.u), to.at(e.v), e.mult);
  return out;
}

}  // namespace iep
