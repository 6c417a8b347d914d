#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pmcount/decomposition.hpp"
#include "pmcount/decomposition_io.hpp"
#include "pmcount/engine.hpp"
#include "pmcount/errors.hpp"
#include "pmcount/oracle.hpp"

namespace pmcount {
namespace {

DecompositionNode make_node(WeightedMultigraph g, VertexSet navel, std::optional<NodeId> parent) {
  DecompositionNode n;
  n.embedding = test_planarity(g);
  n.graph = std::move(g);
  n.navel = std::move(navel);
  n.parent = parent;
  return n;
}

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
  for (const auto& v : vs) {
    if (v.kind == kind) return true;
  }
  return false;
}

// Triangle 1-2-3 with vertices 4 and 6 inside, 5 and 7 outside.
WeightedMultigraph separating_host() {
  return WeightedMultigraph({1, 2, 3, 4, 5, 6, 7}, {{1, 2, 1},
                                                    {2, 3, 2},
                                                    {1, 3, 1},
                                                    {1, 4, 1},
                                                    {2, 4, -1},
                                                    {3, 4, 1},
                                                    {4, 6, 3},
                                                    {1, 6, 1},
                                                    {2, 6, 1},
                                                    {1, 5, 2},
                                                    {2, 5, 1},
                                                    {3, 5, 1},
                                                    {5, 7, 1},
                                                    {1, 7, -2},
                                                    {3, 7, 1}});
}

DecompositionTree separating_fixture() {
  DecompositionTree t;
  t.nodes.emplace(0, make_node(separating_host(), {}, std::nullopt));
  std::vector<Edge> k5;
  const std::vector<VertexId> vs{1, 2, 3, 8, 9};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const bool host_edge = vs[i] <= 3 && vs[j] <= 3;
      k5.push_back({vs[i], vs[j], host_edge ? Rational(0) : Rational(static_cast<int>(i + j) - 3)});
    }
  }
  t.nodes.emplace(1, make_node(WeightedMultigraph(vs, k5), VertexSet{1, 2, 3}, 0));
  return t;
}

TEST(Validate, SingleSmallNode) {
  const auto g = testing::complete_graph(4);
  DecompositionTree t;
  t.nodes.emplace(0, make_node(g, {}, std::nullopt));
  EXPECT_TRUE(validate(t, g).empty());
  EXPECT_EQ(compose(t), g);
}

TEST(Validate, NonAdjacentAttachmentPair) {
  DecompositionTree t;
  t.nodes.emplace(0, make_node(WeightedMultigraph({1, 2, 3}, {{1, 2, 1}, {2, 3, 1}}), {}, std::nullopt));
  t.nodes.emplace(1, make_node(WeightedMultigraph({1, 3, 4}, {{1, 4, 1}, {3, 4, 1}}), VertexSet{1, 3}, 0));
  EXPECT_TRUE(has_kind(validate(t, compose(t)), "clique"));
}

TEST(Validate, TwoTrianglesOnAnEdge) {
  DecompositionTree t;
  t.nodes.emplace(0, make_node(WeightedMultigraph({2, 3}, {{2, 3, 1}}), {}, std::nullopt));
  t.nodes.emplace(1, make_node(WeightedMultigraph({1, 2, 3}, {{1, 2, 1}, {1, 3, 2}, {2, 3, 0}}), VertexSet{2, 3}, 0));
  t.nodes.emplace(2, make_node(WeightedMultigraph({2, 3, 4}, {{2, 4, 3}, {3, 4, 4}, {2, 3, 0}}), VertexSet{2, 3}, 0));
  const WeightedMultigraph diamond({1, 2, 3, 4}, {{1, 2, 1}, {1, 3, 2}, {2, 3, 1}, {2, 4, 3}, {3, 4, 4}});
  EXPECT_TRUE(validate(t, diamond).empty());
  EXPECT_EQ(canonical_form(compose(t)), canonical_form(diamond));
  EXPECT_EQ(evaluate_decomposition(t), brute_perfmatch(diamond));
}

TEST(Validate, DetectsStructuralProblems) {
  auto t = separating_fixture();
  const auto g = compose(t);
  EXPECT_TRUE(has_kind(validate(t, g), "face"));

  auto wide = t;
  wide.nodes[1].navel = VertexSet{1, 2, 3, 8};
  EXPECT_FALSE(validate(wide, g).empty());

  auto no_emb = t;
  no_emb.nodes[0].embedding.reset();
  EXPECT_TRUE(has_kind(validate(no_emb, g), "embedding"));

  auto wrong_graph = g;
  wrong_graph.add_edge(4, 5, 1);
  EXPECT_TRUE(has_kind(validate(t, wrong_graph), "composition"));
}

TEST(FaceRepair, FacialTrianglesUnchanged) {
  DecompositionTree t;
  const auto host = testing::octahedron();
  t.nodes.emplace(0, make_node(host, {}, std::nullopt));
  EXPECT_TRUE(same_tree(face_repair(t, 0), t));
}

TEST(FaceRepair, SeparatingTriangle) {
  const auto t = separating_fixture();
  const auto g = compose(t);
  const auto repaired = face_repair(t, 0);
  EXPECT_GT(repaired.nodes.size(), t.nodes.size());
  EXPECT_TRUE(validate(repaired, g).empty());
  EXPECT_EQ(brute_perfmatch(compose(repaired)), brute_perfmatch(g));
  EXPECT_EQ(evaluate_decomposition(repaired), brute_perfmatch(g));
}

TEST(FaceRepair, RequiresEmbedding) {
  auto t = separating_fixture();
  t.nodes[0].embedding.reset();
  EXPECT_THROW(face_repair(t, 0), PreconditionError);
}

TEST(TreeDecomposition, ExactWidth) {
  EXPECT_EQ(exact_tree_decomposition(testing::cycle(8)).width(), 2u);
  EXPECT_EQ(exact_tree_decomposition(testing::complete_graph(5)).width(), 4u);
  EXPECT_EQ(exact_tree_decomposition(gen_grid(3, 3)).width(), 3u);
  const WeightedMultigraph path({1, 2, 3, 4}, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
  const auto r = exact_tree_decomposition(path);
  EXPECT_EQ(r.width(), 1u);
  EXPECT_TRUE(check_tree_decomposition(path, r).empty());
}

TEST(SplitWithTreedec, SingleBagIsIdentity) {
  const auto g = testing::complete_graph(4, 2);
  DecompositionTree t;
  t.nodes.emplace(0, make_node(g, {}, std::nullopt));
  TreeDecomposition r{{g.vertex_set()}, {std::nullopt}};
  const auto out = split_with_treedec(t, 0, r);
  EXPECT_EQ(out.nodes.size(), 1u);
  EXPECT_EQ(canonical_form(compose(out)), canonical_form(g));
}

TEST(SplitWithTreedec, PathBecomesChain) {
  const WeightedMultigraph path({1, 2, 3, 4, 5, 6}, {{1, 2, 1}, {2, 3, 2}, {3, 4, 3}, {4, 5, 4}, {5, 6, 5}});
  DecompositionTree t;
  t.nodes.emplace(0, make_node(path, {}, std::nullopt));
  TreeDecomposition r;
  for (VertexId v = 1; v < 6; ++v) {
    r.bags.push_back(VertexSet{v, v + 1});
    r.parent.push_back(v == 1 ? std::nullopt : std::optional<std::size_t>(v - 2));
  }
  const auto out = split_with_treedec(t, 0, r);
  EXPECT_EQ(out.nodes.size(), 5u);
  for (const auto& [id, n] : out.nodes) EXPECT_EQ(n.graph.vertex_count(), 2u);
  EXPECT_TRUE(validate(out, path).empty());
  EXPECT_EQ(evaluate_decomposition(out), 15);
}

TEST(SplitWithTreedec, RandomNodesPreservePerfMatch) {
  std::mt19937_64 rng(5);
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 25 && seed < 400; ++seed) {
    const auto g = gen_planar(10, 0.6, {-3, 3, 2}, seed);
    const auto r = exact_tree_decomposition(g);
    if (r.width() > 5) continue;
    DecompositionTree t;
    t.nodes.emplace(0, make_node(g, {}, std::nullopt));
    DecompositionTree out;
    try {
      out = split_with_treedec(t, 0, r);
    } catch (const PreconditionError&) {
      continue;
    }
    ++tested;
    EXPECT_TRUE(validate(out, g).empty()) << "seed " << seed;
    EXPECT_EQ(evaluate_decomposition(out), brute_perfmatch(g)) << "seed " << seed;
  }
  EXPECT_GE(tested, 10);
}

TEST(SplitWithTreedec, RejectsWideBags) {
  const auto g = testing::complete_graph(7);
  DecompositionTree t;
  t.nodes.emplace(0, make_node(g, {}, std::nullopt));
  TreeDecomposition r{{g.vertex_set()}, {std::nullopt}};
  EXPECT_THROW(split_with_treedec(t, 0, r), PreconditionError);
}

TEST(DecomposeK33Free, PlanarGraph) {
  const auto g = gen_planar(12, 0.9, {}, 4);
  const auto t = decompose_k33free(g);
  EXPECT_TRUE(validate(t, g).empty());
  EXPECT_EQ(evaluate_decomposition(t), brute_perfmatch(g));
}

TEST(DecomposeK33Free, TwoK5OnAnEdge) {
  std::vector<Edge> es;
  for (VertexId a = 1; a <= 5; ++a) {
    for (VertexId b = a + 1; b <= 5; ++b) es.push_back({a, b, Rational(static_cast<int>(a + b) % 3 + 1)});
  }
  const std::vector<VertexId> other{4, 5, 6, 7, 8};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      if (other[i] <= 5 && other[j] <= 5) continue;
      es.push_back({other[i], other[j], Rational(static_cast<int>(i * j) % 3 + 1)});
    }
  }
  const WeightedMultigraph g({1, 2, 3, 4, 5, 6, 7, 8}, es);
  const auto t = decompose_k33free(g);
  EXPECT_TRUE(validate(t, g).empty());
  std::size_t k5s = 0;
  for (const auto& [id, n] : t.nodes) k5s += is_k5(n.graph);
  EXPECT_EQ(k5s, 2u);
  EXPECT_GE(t.nodes.size(), 2u);
  EXPECT_LE(t.nodes.size(), 3u);
  EXPECT_EQ(evaluate_decomposition(t), brute_perfmatch(g));
}

TEST(DecomposeK33Free, RejectsK33) {
  EXPECT_THROW(decompose_k33free(testing::k33()), NotInClassError);
  auto g = testing::k33();
  g.add_vertex(7);
  g.add_edge(1, 7, 1);
  EXPECT_THROW(decompose_k33free(g), NotInClassError);
}

TEST(DecomposeK33Free, DisconnectedAndTrivialGraphs) {
  const WeightedMultigraph g({1, 2, 3, 4, 5}, {{1, 2, 2}, {3, 4, 3}});
  const auto t = decompose_k33free(g);
  EXPECT_TRUE(validate(t, g).empty());
  const WeightedMultigraph empty;
  EXPECT_TRUE(validate(decompose_k33free(empty), empty).empty());
}

TEST(DecomposeK33Free, GeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = gen_cliquesum({}, seed);
    EXPECT_TRUE(validate(inst.tree, inst.graph).empty()) << "seed " << seed;
    const auto t = decompose_k33free(inst.graph);
    EXPECT_TRUE(validate(t, inst.graph).empty()) << "seed " << seed;
    for (const auto& [id, n] : t.nodes) EXPECT_TRUE(n.embedding || is_k5(n.graph));
  }
}

TEST(DecompositionIo, RoundTrip) {
  const auto t = separating_fixture();
  const auto text = serialize_decomposition(t);
  const auto back = parse_decomposition(text);
  EXPECT_TRUE(same_tree(t, back));
  EXPECT_EQ(serialize_decomposition(back), text);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_cliquesum({}, seed);
    EXPECT_TRUE(same_tree(parse_decomposition(serialize_decomposition(inst.tree)), inst.tree));
  }
}

TEST(DecompositionIo, WideNavelParsesButFailsValidation) {
  auto t = separating_fixture();
  t.nodes[1].navel = VertexSet{1, 2, 3, 8};
  const auto back = parse_decomposition(serialize_decomposition(t));
  EXPECT_FALSE(validate(back, compose(separating_fixture())).empty());
}

TEST(DecompositionIo, Errors) {
  EXPECT_THROW(parse_decomposition(R"({"c": 5, "root": 0, "nodes": []})"), ParseError);
  EXPECT_THROW(parse_decomposition("{\"c\": 5,\n \"root\": "), ParseError);
  EXPECT_THROW(parse_decomposition("[1, 2]"), ParseError);
  try {
    parse_decomposition("{\n  \"c\": 5,\n  oops\n}");
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
  }
  EXPECT_THROW(read_decomposition_file("/nonexistent.json"), ParseError);
}

}  // namespace
}  // namespace pmcount
