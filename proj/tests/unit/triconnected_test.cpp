#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "pmcount/large_stack.hpp"
#include "pmcount/triconnected.hpp"

namespace pmcount {
namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

bool connected_without(std::size_t n, const EdgeList& edges, const std::vector<std::size_t>& edge_ids,
                       std::set<std::size_t> removed) {
  std::set<std::size_t> verts;
  for (std::size_t e : edge_ids) {
    verts.insert(edges[e].first);
    verts.insert(edges[e].second);
  }
  for (std::size_t r : removed) verts.erase(r);
  if (verts.empty()) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e : edge_ids) {
    const auto [u, v] = edges[e];
    if (removed.count(u) || removed.count(v)) continue;
    parent[find(u)] = find(v);
  }
  const std::size_t root = find(*verts.begin());
  return std::all_of(verts.begin(), verts.end(), [&](std::size_t v) { return find(v) == root; });
}

bool biconnected(std::size_t n, const EdgeList& edges) {
  std::vector<bool> touched(n, false);
  for (const auto& [u, v] : edges) touched[u] = touched[v] = true;
  if (std::find(touched.begin(), touched.end(), false) != touched.end()) return false;
  std::vector<std::size_t> all(edges.size());
  std::iota(all.begin(), all.end(), 0);
  if (!connected_without(n, edges, all, {})) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (!connected_without(n, edges, all, {v})) return false;
  }
  return true;
}

void check_split(std::size_t n, const EdgeList& edges) {
  TriconnectedSplit split;
  run_with_large_stack([&] { split = triconnected_components(n, edges); });
  const std::size_t real = edges.size();
  ASSERT_GE(split.ends.size(), real);
  for (std::size_t e = 0; e < real; ++e) {
    auto a = split.ends[e], b = edges[e];
    EXPECT_EQ(std::minmax(a.first, a.second), std::minmax(b.first, b.second));
  }
  std::vector<std::size_t> owners(split.ends.size(), 0);
  std::vector<std::vector<std::size_t>> comps_of(split.ends.size());
  for (std::size_t c = 0; c < split.components.size(); ++c) {
    for (std::size_t e : split.components[c].edges) {
      ++owners[e];
      comps_of[e].push_back(c);
    }
  }
  for (std::size_t e = 0; e < owners.size(); ++e) EXPECT_EQ(owners[e], e < real ? 1u : 2u) << "edge " << e;

  for (std::size_t c = 0; c < split.components.size(); ++c) {
    const auto& comp = split.components[c];
    std::map<std::size_t, std::size_t> degree;
    std::set<std::pair<std::size_t, std::size_t>> simple;
    for (std::size_t e : comp.edges) {
      ++degree[split.ends[e].first];
      ++degree[split.ends[e].second];
      simple.insert(std::minmax(split.ends[e].first, split.ends[e].second));
    }
    switch (comp.kind) {
      case ComponentKind::Bond:
        EXPECT_EQ(degree.size(), 2u);
        if (split.components.size() > 1) {
          EXPECT_GE(comp.edges.size(), 3u);
        }
        break;
      case ComponentKind::Polygon:
        EXPECT_EQ(comp.edges.size(), degree.size());
        EXPECT_GE(degree.size(), 3u);
        for (const auto& [v, d] : degree) EXPECT_EQ(d, 2u);
        EXPECT_TRUE(connected_without(n, split.ends, comp.edges, {}));
        break;
      case ComponentKind::Triconnected: {
        EXPECT_EQ(simple.size(), comp.edges.size());
        EXPECT_GE(degree.size(), 4u);
        std::vector<std::size_t> vs;
        for (const auto& [v, d] : degree) vs.push_back(v);
        for (std::size_t i = 0; i < vs.size(); ++i) {
          for (std::size_t j = i + 1; j < vs.size(); ++j) {
            EXPECT_TRUE(connected_without(n, split.ends, comp.edges, {vs[i], vs[j]}))
                << "component " << c << " has separation pair";
          }
        }
        break;
      }
    }
  }
  for (std::size_t e = real; e < split.ends.size(); ++e) {
    if (comps_of[e].size() != 2) continue;
    const auto ka = split.components[comps_of[e][0]].kind, kb = split.components[comps_of[e][1]].kind;
    EXPECT_FALSE(ka == kb && ka != ComponentKind::Triconnected) << "adjacent components of the same kind";
  }
}

TEST(Triconnected, SingleEdgeAndBond) {
  check_split(2, {{0, 1}});
  check_split(2, {{0, 1}, {0, 1}, {1, 0}});
}

TEST(Triconnected, CycleIsOnePolygon) {
  const EdgeList c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  TriconnectedSplit s;
  run_with_large_stack([&] { s = triconnected_components(5, c5); });
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.components[0].kind, ComponentKind::Polygon);
  check_split(5, c5);
}

TEST(Triconnected, K4IsOneComponent) {
  const EdgeList k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  TriconnectedSplit s;
  run_with_large_stack([&] { s = triconnected_components(4, k4); });
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.components[0].kind, ComponentKind::Triconnected);
}

TEST(Triconnected, TwoK4SharingAnEdge) {
  const EdgeList g{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {2, 5}, {3, 5}, {4, 5}};
  TriconnectedSplit s;
  run_with_large_stack([&] { s = triconnected_components(6, g); });
  std::size_t tri = 0, bonds = 0;
  for (const auto& c : s.components) {
    tri += c.kind == ComponentKind::Triconnected;
    bonds += c.kind == ComponentKind::Bond;
  }
  EXPECT_EQ(tri, 2u);
  EXPECT_EQ(bonds, 1u);
  check_split(6, g);
}

TEST(Triconnected, RandomBiconnectedMultigraphs) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 3000 && checked < 400; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const double p = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    std::bernoulli_distribution keep(p), twice(0.1);
    EdgeList edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!keep(rng)) continue;
        edges.emplace_back(u, v);
        if (twice(rng)) edges.emplace_back(v, u);
      }
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    if (edges.size() < 2 || !biconnected(n, edges)) continue;
    ++checked;
    check_split(n, edges);
    if (::testing::Test::HasFailure()) return;
  }
  EXPECT_GE(checked, 100);
}

TEST(Triconnected, LongCycleNeedsDeepRecursion) {
  const std::size_t n = 20000;
  EdgeList edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  TriconnectedSplit s;
  run_with_large_stack([&] { s = triconnected_components(n, edges); });
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.components[0].kind, ComponentKind::Polygon);
}

}  // namespace
}  // namespace pmcount
