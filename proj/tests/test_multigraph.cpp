#include <gtest/gtest.h>

#include "iep/iep.hpp"
#include "oracles.hpp"

using namespace iep;

namespace {

const VertexId a{1}, b{2}, c{3}, d{4};

Multigraph path3() {
  Multigraph g(3);
  g.add_edge(a, b);
  g.add_edge(b, c);
  return g;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(Multigraph, DegreeCountsNeighborsAndMultidegreeCountsInstances) {
  Multigraph g(3);
  g.add_edge(a, b, 3);
  g.add_edge(a, c);
  EXPECT_EQ(g.deg(a), 2);
  EXPECT_EQ(g.mdeg(a), 4);
  EXPECT_EQ(g.num_edges(), 4u);
  EXPECT_EQ(g.num_multiedges(), 2u);
  EXPECT_EQ(g.edge_instances().size(), 4u);
  EXPECT_TRUE(g.has_edge(make_edge(b, a, 3)));
  EXPECT_FALSE(g.has_edge(make_edge(a, b, 4)));
}

TEST(Multigraph, EdgeRefIsNormalized) {
  EdgeRef e = make_edge(c, a, 2);
  EXPECT_EQ(e.u, a);
  EXPECT_EQ(e.v, c);
  EXPECT_EQ(e.other(a), c);
}

TEST(Multigraph, LoopsAreRejected) { EXPECT_EQ(kind_of([] { Multigraph(2).add_edge(a, a); }), ErrorKind::kInvalidArgument); }

TEST(Multigraph, RemoveVertexDropsIncidentEdges) {
  Multigraph g(3);
  g.add_edge(a, b, 2);
  g.add_edge(b, c);
  g.remove_vertex(b);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(g.num_vertices(), 2u);
}

TEST(Lift, PathBecomesSingleEdgeWithIsolatedMiddle) {
  Multigraph out = lift(path3(), make_edge(a, b), make_edge(b, c));
  EXPECT_EQ(out.num_vertices(), 3u);
  EXPECT_EQ(out.num_edges(), 1u);
  EXPECT_EQ(out.mult(a, c), 1);
  EXPECT_EQ(out.deg(b), 0);
}

TEST(Lift, IncrementsExistingMultiplicity) {
  Multigraph g(3);
  g.add_edge(a, b, 2);
  g.add_edge(b, c);
  g.add_edge(a, c);
  Multigraph out = lift(g, make_edge(a, b, 2), make_edge(b, c, 1));
  EXPECT_EQ(out.mult(a, c), 2);
  EXPECT_EQ(out.mult(a, b), 1);
  EXPECT_EQ(out.mult(b, c), 0);
}

TEST(Lift, ParallelPairVanishes) {
  Multigraph out = lift(theta(2), make_edge(a, b, 1), make_edge(a, b, 2));
  EXPECT_EQ(out.num_vertices(), 2u);
  EXPECT_EQ(out.num_edges(), 0u);
}

TEST(Lift, Errors) {
  Multigraph g(4);
  g.add_edge(a, b);
  g.add_edge(c, d);
  EXPECT_EQ(kind_of([&] { lift(g, make_edge(a, b), make_edge(c, d)); }), ErrorKind::kNotIncident);
  EXPECT_EQ(kind_of([&] { lift(g, make_edge(a, b), make_edge(a, b)); }), ErrorKind::kNotIncident);
  EXPECT_EQ(kind_of([&] { lift(g, make_edge(a, b), make_edge(b, c)); }), ErrorKind::kMissingEdge);
}

TEST(Dissolve, PathMiddle) {
  Multigraph out = dissolve(path3(), b);
  EXPECT_EQ(out.vertices(), (std::vector<VertexId>{a, c}));
  EXPECT_EQ(out.mult(a, c), 1);
}

TEST(Dissolve, TriangleBecomesTheta2) {
  Multigraph out = dissolve(cycle_graph(3), c);
  EXPECT_EQ(out.num_vertices(), 2u);
  EXPECT_EQ(out.mult(a, b), 2);
}

TEST(Dissolve, SameNeighborLeavesIsolatedVertex) {
  Multigraph out = dissolve(theta(2), b);
  EXPECT_EQ(out.vertices(), (std::vector<VertexId>{a}));
  EXPECT_EQ(out.num_edges(), 0u);
}

TEST(Dissolve, NeedsMultidegreeTwo) { EXPECT_EQ(kind_of([] { dissolve(theta(3), a); }), ErrorKind::kBadDegree); }

TEST(Subdivide, SingleEdgeBecomesPath) {
  auto [out, s] = subdivide(path_graph(2), make_edge(a, b));
  EXPECT_EQ(out.num_vertices(), 3u);
  EXPECT_EQ(out.mult(a, s), 1);
  EXPECT_EQ(out.mult(s, b), 1);
  EXPECT_EQ(out.mult(a, b), 0);
}

TEST(Subdivide, OneInstanceOfTheta2) {
  auto [out, s] = subdivide(theta(2), make_edge(a, b, 1));
  EXPECT_EQ(out.mult(a, b), 1);
  EXPECT_EQ(out.mult(a, s), 1);
  EXPECT_EQ(out.mult(s, b), 1);
}

TEST(Subdivide, DissolveUndoesIt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Multigraph g = random_connected_multigraph(5, 7, 2, seed);
    for (const auto& e : g.edge_instances()) {
      auto [sub, s] = subdivide(g, e);
      EXPECT_TRUE(oracle::isomorphic(dissolve(sub, s), g));
    }
  }
}

TEST(Structure, ComponentsAndInducedSubgraphs) {
  Multigraph g = disjoint_union(cycle_graph(3), path_graph(2));
  auto comps = connected_components(g);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 3u);
  EXPECT_FALSE(is_connected(g));
  Multigraph tri = induced_subgraph(g, {comps[0].begin(), comps[0].end()});
  EXPECT_EQ(tri.num_edges(), 3u);
  EXPECT_EQ(max_mdeg(theta(4)), 4);
  EXPECT_EQ(min_mdeg(star(3)), 1);
  EXPECT_EQ(underlying_simple(theta(4)).num_edges(), 1u);
}

TEST(GraphText, ParsesTheta2) {
  Multigraph g = parse_graph("p mgraph 2 1\ne 1 2 2\n");
  EXPECT_EQ(g, theta(2));
}

TEST(GraphText, CommentsAndBlankLines) {
  Multigraph g = parse_graph("c a triangle\n\np mgraph 3 3\ne 1 2 1\ne 2 3 1\nc inline\ne 1 3 1\n");
  EXPECT_EQ(g, cycle_graph(3));
}

TEST(GraphText, Errors) {
  auto message = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("p mgraph 3 1\ne 3 3 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("p mgraph 3 1\ne 1 4 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("e 1 2 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("p mgraph 3 2\ne 1 2 1\n").find("declares"), std::string::npos);
  EXPECT_NE(message("p mgraph 3 2\ne 1 2 1\ne 2 1 1\n").find("repeated"), std::string::npos);
  EXPECT_NE(message("p mgraph 2 1\ne 1 2 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("").find("missing header"), std::string::npos);
}

TEST(GraphText, RoundTripRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    Multigraph g = random_multigraph(n, static_cast<int>(seed % 17) % (3 * n * (n - 1) / 2 + 1), 3, seed);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g) << "seed " << seed;
  }
}

TEST(GraphText, NonStandardIdsAreRenumbered) {
  Multigraph g;
  g.add_vertex(VertexId{5});
  g.add_vertex(VertexId{9});
  g.add_edge(VertexId{5}, VertexId{9}, 2);
  EXPECT_FALSE(has_standard_ids(g));
  EXPECT_EQ(parse_graph(serialize_graph(g)), theta(2));
}

TEST(GraphText, DotListsEveryInstance) {
  std::string dot = to_dot(theta(3));
  std::size_t count = 0;
  for (std::size_t at = dot.find("--"); at != std::string::npos; at = dot.find("--", at + 1)) ++count;
  EXPECT_EQ(count, 3u);
}
