#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmcount/graph.hpp"
#include "pmcount/planarity.hpp"

namespace pmcount {

using NodeId = std::size_t;

struct DecompositionNode {
  std::optional<NodeId> parent;
  // Attachment clique towards the parent; empty at the root.
  VertexSet navel;
  WeightedMultigraph graph;
  // Required when the graph has more than c vertices.
  std::optional<PlaneEmbedding> embedding;
};

struct DecompositionTree {
  std::size_t c = 5;
  NodeId root = 0;
  std::map<NodeId, DecompositionNode> nodes;

  // Child lists for every node (empty vectors included), children sorted by id.
  std::map<NodeId, std::vector<NodeId>> children() const;
  NodeId next_free_id() const { return nodes.empty() ? 0 : nodes.rbegin()->first + 1; }
};

// Equality of the tree structure, local graphs and rotation systems.
bool same_tree(const DecompositionTree& a, const DecompositionTree& b);

struct Violation {
  std::string kind;
  std::vector<NodeId> nodes;
  std::string message;
};

// Checks tree shape, navels (= intersection with the parent, a clique in the
// union of both local graphs, at most 3 vertices), running intersection,
// embeddings of large nodes, facial non-navel triangles, and that the
// composed graph equals g once parallel edges are merged and zero-weight
// edges dropped. An empty result means valid.
std::vector<Violation> validate(const DecompositionTree& t, const WeightedMultigraph& g);

std::string describe(const Violation& v);

// Union of all local graphs, which equals the iterated clique sum.
// Throws InvalidDecompositionError if the parent links do not form a tree.
WeightedMultigraph compose(const DecompositionTree& t);

// Merge parallel edges, drop zero-weight edges, sort edges by endpoints.
WeightedMultigraph canonical_form(const WeightedMultigraph& g);

// Repeatedly moves the part enclosed by a non-facial attachment triangle of
// node `id` into a new child until every such triangle bounds a face, in the
// node and in each node split off from it. Throws PreconditionError if the
// node has nothing to repair or no embedding.
DecompositionTree face_repair(const DecompositionTree& t, NodeId id);

// Tree decomposition of one local graph; parent[i] is nullopt for the root.
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::optional<std::size_t>> parent;

  std::size_t width() const;
};

// Problems with r as a tree decomposition of g (empty means valid).
std::vector<std::string> check_tree_decomposition(const WeightedMultigraph& g, const TreeDecomposition& r);

// Replaces node `id` by one node per bag of r, rooted at a bag that contains
// the navel. Bags may hold at most c vertices and adjacent bags may share at
// most 3. Each edge lands in the topmost bag holding both ends; adjacent bags
// get zero-weight edges on their intersection. Former children move to the
// topmost bag that contains their navel.
DecompositionTree split_with_treedec(const DecompositionTree& t, NodeId id, const TreeDecomposition& r);

// Minimum-width tree decomposition by dynamic programming over vertex
// subsets. Throws PreconditionError above 20 vertices.
TreeDecomposition exact_tree_decomposition(const WeightedMultigraph& g);

// True iff the underlying simple graph is K5.
bool is_k5(const WeightedMultigraph& g);

// 5-nice decomposition of a K3,3-minor-free graph from connected components,
// blocks and triconnected components. Zero-weight edges are dropped and
// parallel edges merged first. Separation pairs become zero-weight edges in
// both nodes. Every node is planar (with an embedding) or a K5; every
// attachment clique has at most two vertices. Throws NotInClassError.
DecompositionTree decompose_k33free(const WeightedMultigraph& g);

}  // namespace pmcount
