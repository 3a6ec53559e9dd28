#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "graphprod/error.hpp"
#include "graphprod/normal_form.hpp"

using graphprod::Clique;
using graphprod::PreconditionError;
using graphprod::PresentationGraph;
using graphprod::Vertex;
using graphprod::VertexGroup;
using graphprod::VertexSet;

namespace {

std::vector<VertexGroup> z2s(std::size_t n) {
  return std::vector<VertexGroup>(n, VertexGroup::cyclic(2));
}

// Every vertex subset that is pairwise adjacent, by brute force over masks.
std::set<std::uint64_t> brute_cliques(const PresentationGraph& g) {
  std::set<std::uint64_t> out;
  const auto n = g.vertex_count();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u) {
      for (Vertex v = u + 1; v < n && ok; ++v) {
        if (((mask >> u) & 1U) && ((mask >> v) & 1U)) {
          ok = g.adjacent(u, v);
        }
      }
    }
    if (ok) {
      out.insert(mask);
    }
  }
  return out;
}

}  // namespace

TEST(VertexSet, BasicsAndRendering) {
  VertexSet s{2, 0};
  EXPECT_EQ(s.size(), 2U);
  EXPECT_TRUE(s.contains(0));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.to_string(), "{0,2}");
  EXPECT_EQ(VertexSet{}.to_string(), "{}");
  EXPECT_TRUE(VertexSet{2}.is_subset_of(s));
  EXPECT_EQ(s.vertices(), (std::vector<Vertex>{0, 2}));
  EXPECT_THROW(s.insert(64), PreconditionError);
}

TEST(PresentationGraph, AdjacencyIsSymmetricAndIrreflexive) {
  const auto g = testing_support::make_graph(z2s(3), {{0, 1}, {2, 1}});
  EXPECT_TRUE(g->adjacent(0, 1));
  EXPECT_TRUE(g->adjacent(1, 0));
  EXPECT_TRUE(g->adjacent(1, 2));
  EXPECT_FALSE(g->adjacent(0, 2));
  EXPECT_FALSE(g->adjacent(1, 1));
  EXPECT_THROW(g->adjacent(0, 3), PreconditionError);
}

TEST(PresentationGraph, RejectsBadEdges) {
  EXPECT_THROW(testing_support::make_graph(z2s(2), {{0, 0}}), PreconditionError);
  EXPECT_THROW(testing_support::make_graph(z2s(2), {{0, 1}, {1, 0}}), PreconditionError);
  EXPECT_THROW(testing_support::make_graph(z2s(2), {{0, 2}}), PreconditionError);
}

TEST(PresentationGraph, CliqueCatalogueOfPath) {
  const auto g = testing_support::make_graph(z2s(3), {{0, 1}, {1, 2}});
  std::vector<std::string> names;
  for (const auto& J : g->cliques()) {
    names.push_back(J.to_string());
  }
  EXPECT_EQ(names, (std::vector<std::string>{"{}", "{0}", "{1}", "{2}", "{0,1}", "{1,2}"}));
  EXPECT_EQ(g->cliques_of_size(2).size(), 2U);
  EXPECT_EQ(g->cliques_of_size(3).size(), 0U);
  EXPECT_TRUE(g->is_clique(VertexSet{0, 1}));
  EXPECT_FALSE(g->is_clique(VertexSet{0, 2}));
}

TEST(PresentationGraph, CliquesMatchBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng() % 2 == 0) {
          edges.emplace_back(u, v);
        }
      }
    }
    const auto g = testing_support::make_graph(z2s(n), edges);
    std::set<std::uint64_t> listed;
    for (const auto& J : g->cliques()) {
      EXPECT_TRUE(listed.insert(J.bits()).second) << "clique listed twice";
    }
    EXPECT_EQ(listed, brute_cliques(*g));
    // Ordered by size.
    EXPECT_TRUE(std::is_sorted(g->cliques().begin(), g->cliques().end(),
                               [](Clique a, Clique b) { return a.size() < b.size(); }));
  }
}

TEST(PresentationGraph, InfiniteVertexGroupFlag) {
  const auto finite = testing_support::make_graph(z2s(2));
  EXPECT_FALSE(finite->has_infinite_vertex_group());
  const auto mixed = testing_support::make_graph({VertexGroup::cyclic(3), VertexGroup::integers()});
  EXPECT_TRUE(mixed->has_infinite_vertex_group());
}

TEST(Support, OfNormalForms) {
  const auto g = testing_support::make_graph(z2s(3), {{0, 1}, {1, 2}});
  const auto x = graphprod::parse_element(*g, "v0:1 v2:1");
  EXPECT_EQ(graphprod::support(x), (VertexSet{0, 2}));
  EXPECT_TRUE(graphprod::support_in_clique(graphprod::parse_element(*g, "v1:1 v2:1"), VertexSet{1, 2}));
  EXPECT_FALSE(graphprod::support_in_clique(x, VertexSet{0, 1}));
}

TEST(Fixtures, ShippedConfigsBuild) {
  for (const auto& f : testing_support::load_all_fixtures()) {
    EXPECT_GE(f.graph->vertex_count(), 2U) << f.name;
  }
}
