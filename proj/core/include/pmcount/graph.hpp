#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "pmcount/rational.hpp"

namespace pmcount {

// Global vertex label. Subgraph operations never renumber vertices, so two
// graphs that mention the same id refer to the same vertex; clique sums glue
// on that identity.
using VertexId = std::uint32_t;

// Sorted, duplicate-free list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  // Sorts; throws PreconditionError on duplicates.
  explicit VertexSet(std::vector<VertexId> ids);

  bool contains(VertexId v) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  VertexId operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<VertexId>& ids() const { return ids_; }

  bool is_subset_of(const VertexSet& other) const;
  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_intersection(const VertexSet& other) const;
  VertexSet set_difference(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> ids_;
};

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph with exact weights. Edges are addressed by their
// position in edges(); parallel and zero-weight edges are allowed, loops are
// not.
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  // Throws PreconditionError on a loop, a duplicate vertex, or an edge
  // endpoint that is not a listed vertex.
  WeightedMultigraph(std::vector<VertexId> vertices, std::vector<Edge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(VertexId v) const;
  // Position of v in vertices(), if present.
  std::optional<std::size_t> index_of(VertexId v) const;
  VertexSet vertex_set() const { return VertexSet(vertices_); }
  VertexId max_vertex_id() const { return vertices_.empty() ? 0 : vertices_.back(); }

  void add_vertex(VertexId v);
  // Returns the index of the new edge.
  std::size_t add_edge(VertexId u, VertexId v, Rational weight);

  // Per vertex position, the indices of incident edges in edge order.
  std::vector<std::vector<std::size_t>> incidence() const;

  friend bool operator==(const WeightedMultigraph&, const WeightedMultigraph&) = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
};

// G (+)_K G2: disjoint union with the vertices of K identified. Requires
// K = V(G) n V(G2); parallel edges between K-vertices are kept.
WeightedMultigraph clique_sum(const WeightedMultigraph& g, const WeightedMultigraph& g2,
                              const VertexSet& k);

// One edge per adjacent pair, weighted by the sum of its parallel copies.
// Edges appear in order of first occurrence.
WeightedMultigraph merge_parallel(const WeightedMultigraph& g);

WeightedMultigraph strip_zero_edges(const WeightedMultigraph& g);

// G - X. Requires X to be a subset of V(G).
WeightedMultigraph delete_vertices(const WeightedMultigraph& g, const VertexSet& x);

// Subgraph on the same vertex set keeping only the listed edges (in that order).
WeightedMultigraph edge_subgraph(const WeightedMultigraph& g, std::span<const std::size_t> edges);

// Vertex partition into connected components; each list is sorted.
std::vector<std::vector<VertexId>> connected_components(const WeightedMultigraph& g);

// Induced subgraph on a subset of vertices.
WeightedMultigraph induced_subgraph(const WeightedMultigraph& g, const VertexSet& keep);

// Same vertices, every weight replaced by one.
WeightedMultigraph with_unit_weights(const WeightedMultigraph& g);

}  // namespace pmcount
