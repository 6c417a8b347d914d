#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmcount/engine.hpp"
#include "pmcount/errors.hpp"
#include "pmcount/oracle.hpp"

namespace pmcount {
namespace {

TEST(ProcessNode, PlanarRootLeaf) {
  DecompositionTree t;
  DecompositionNode n;
  n.graph = gen_grid(2, 4);
  n.embedding = test_planarity(n.graph);
  t.nodes.emplace(0, n);
  const Signature s = process_node(t, 0, {});
  EXPECT_EQ(s.arity(), 0u);
  EXPECT_EQ(s[0], 5);
}

TEST(ProcessNode, K5LeafWithPairNavel) {
  DecompositionTree t;
  DecompositionNode root;
  root.graph = WeightedMultigraph({1, 2}, {{1, 2, 1}});
  t.nodes.emplace(0, root);
  DecompositionNode leaf;
  leaf.graph = testing::complete_graph(5);
  leaf.navel = VertexSet{1, 2};
  leaf.parent = 0;
  t.nodes.emplace(1, leaf);
  const Signature s = process_node(t, 1, {});
  const Signature expect = brute_signature(Matchgate(testing::complete_graph(5), {1, 2}));
  EXPECT_EQ(s, expect);
  EXPECT_EQ(s.at(VertexSet{1, 2}), 0);
}

TEST(ProcessNode, PlanarNodeWithK5Child) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CliqueSumOptions o;
    o.pieces = 2;
    o.min_piece_vertices = 6;
    o.max_piece_vertices = 9;
    o.k5_probability = 0;
    auto inst = gen_cliquesum(o, seed);
    DecompositionNode k5;
    const auto& root = inst.tree.nodes.at(0).graph;
    if (root.edge_count() == 0) continue;
    const Edge e = root.edges().front();
    const VertexId base = inst.graph.max_vertex_id();
    std::vector<Edge> es;
    const std::vector<VertexId> vs{e.u, e.v, base + 1, base + 2, base + 3};
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) es.push_back({vs[i], vs[j], static_cast<int>(i + 2 * j) % 5 - 2});
    }
    std::vector<VertexId> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    k5.graph = WeightedMultigraph(sorted, es);
    k5.navel = VertexSet{e.u, e.v};
    k5.parent = 0;
    inst.tree.nodes.emplace(inst.tree.next_free_id(), k5);
    const auto g = compose(inst.tree);
    ASSERT_TRUE(validate(inst.tree, g).empty());
    EXPECT_EQ(count_perfmatch(g, Mode::Decomp, &inst.tree), brute_perfmatch(g)) << "seed " << seed;
  }
}

TEST(CountPerfmatch, OddOrderIsZeroEverywhere) {
  const auto g = testing::complete_graph(5);
  EXPECT_EQ(count_perfmatch(g, Mode::Brute), 0);
  EXPECT_EQ(count_perfmatch(g, Mode::K33), 0);
  EXPECT_EQ(count_perfmatch(g, Mode::Auto), 0);
  EXPECT_EQ(count_perfmatch(gen_grid(3, 3), Mode::Planar), 0);
}

TEST(CountPerfmatch, ModesAgree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CliqueSumOptions o;
    o.max_vertices = 20;
    o.pieces = 0;
    const auto inst = gen_cliquesum(o, seed);
    const auto g = testing::make_even(inst.graph);
    const Rational oracle = brute_perfmatch(g);
    EXPECT_EQ(count_perfmatch(g, Mode::K33), oracle);
    EXPECT_EQ(count_perfmatch(g, Mode::Auto), oracle);
    EXPECT_EQ(count_perfmatch(g, Mode::Brute), oracle);
    EXPECT_EQ(count_perfmatch(inst.graph, Mode::Decomp, &inst.tree), brute_perfmatch(inst.graph));
  }
}

TEST(CountPerfmatch, ErrorsAreDistinct) {
  EXPECT_THROW(count_perfmatch(testing::k33(), Mode::K33), NotInClassError);
  EXPECT_THROW(count_perfmatch(testing::k33(), Mode::Planar), NotPlanarError);
  EXPECT_THROW(count_perfmatch(testing::k33(), Mode::Auto), NotInClassError);
  EXPECT_THROW(count_perfmatch(testing::k33(), Mode::Decomp), PreconditionError);
  auto inst = gen_cliquesum({}, 3);
  auto& node = inst.tree.nodes.begin()->second;
  std::vector<Edge> edges = node.graph.edges();
  edges.front().weight += 1;
  node.graph = WeightedMultigraph(node.graph.vertices(), edges);
  EXPECT_THROW(count_perfmatch(inst.graph, Mode::Decomp, &inst.tree), InvalidDecompositionError);
}

TEST(Engine, ThreadsAndShufflingDoNotChangeResult) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CliqueSumOptions o;
    o.pieces = 0;
    o.max_vertices = 300;
    const auto inst = gen_cliquesum(o, seed);
    const Rational base = evaluate_decomposition(inst.tree);
    for (unsigned threads : {2u, 4u}) {
      EngineOptions opt;
      opt.threads = threads;
      opt.shuffle_seed = seed * 31 + threads;
      EngineStats stats;
      EXPECT_EQ(evaluate_decomposition(inst.tree, opt, &stats), base);
      EXPECT_TRUE(stats.work_bound_holds());
    }
  }
}

TEST(Engine, StatsCountNodes) {
  const auto inst = gen_cliquesum({}, 7);
  EngineStats stats;
  evaluate_decomposition(inst.tree, {}, &stats);
  EXPECT_EQ(stats.nodes, inst.tree.nodes.size());
  EXPECT_EQ(stats.small_nodes + stats.planar_nodes, stats.nodes);
  EXPECT_TRUE(stats.work_bound_holds());
}

}  // namespace
}  // namespace pmcount
