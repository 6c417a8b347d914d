#include "pmcount/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "pmcount/errors.hpp"

namespace pmcount {

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw PreconditionError("vertex set contains a duplicate id");
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  VertexSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out.ids_));
  return out;
}

VertexSet VertexSet::set_intersection(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
  return out;
}

VertexSet VertexSet::set_difference(const VertexSet& other) const {
  VertexSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out.ids_));
  return out;
}

WeightedMultigraph::WeightedMultigraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw PreconditionError("graph lists a vertex twice");
  for (const auto& e : edges_) {
    if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
    if (!has_vertex(e.u) || !has_vertex(e.v))
      throw PreconditionError("edge endpoint is not a vertex of the graph");
  }
}

bool WeightedMultigraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::optional<std::size_t> WeightedMultigraph::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

void WeightedMultigraph::add_vertex(VertexId v) {
  if (vertices_.empty() || vertices_.back() < v) {
    vertices_.push_back(v);
    return;
  }
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (*it != v) vertices_.insert(it, v);
}

std::size_t WeightedMultigraph::add_edge(VertexId u, VertexId v, Rational weight) {
  if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
  if (!has_vertex(u) || !has_vertex(v))
    throw PreconditionError("edge endpoint is not a vertex of the graph");
  edges_.push_back(Edge{u, v, std::move(weight)});
  return edges_.size() - 1;
}

std::vector<std::vector<std::size_t>> WeightedMultigraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    inc[*index_of(edges_[i].u)].push_back(i);
    inc[*index_of(edges_[i].v)].push_back(i);
  }
  return inc;
}

WeightedMultigraph clique_sum(const WeightedMultigraph& g, const WeightedMultigraph& g2,
                              const VertexSet& k) {
  const VertexSet shared = g.vertex_set().set_intersection(g2.vertex_set());
  if (!(shared == k)) {
    if (!k.is_subset_of(shared))
      throw PreconditionError("clique_sum: glue set is not contained in both graphs");
    throw PreconditionError("clique_sum: graphs share a vertex outside the glue set");
  }
  std::vector<VertexId> vertices = g.vertex_set().set_union(g2.vertex_set()).ids();
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), g2.edges().begin(), g2.edges().end());
  return WeightedMultigraph(std::move(vertices), std::move(edges));
}

WeightedMultigraph merge_parallel(const WeightedMultigraph& g) {
  std::map<std::pair<VertexId, VertexId>, std::size_t> slot;
  std::vector<Edge> merged;
  for (const auto& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = slot.try_emplace({key.first, key.second}, merged.size());
    if (inserted) {
      merged.push_back(e);
    } else {
      merged[it->second].weight += e.weight;
    }
  }
  return WeightedMultigraph(g.vertices(), std::move(merged));
}

WeightedMultigraph strip_zero_edges(const WeightedMultigraph& g) {
  std::vector<Edge> kept;
  std::copy_if(g.edges().begin(), g.edges().end(), std::back_inserter(kept),
               [](const Edge& e) { return sgn(e.weight) != 0; });
  return WeightedMultigraph(g.vertices(), std::move(kept));
}

WeightedMultigraph delete_vertices(const WeightedMultigraph& g, const VertexSet& x) {
  if (!x.is_subset_of(g.vertex_set()))
    throw PreconditionError("delete_vertices: set is not contained in the graph");
  if (x.empty()) return g;
  std::vector<VertexId> vertices;
  std::set_difference(g.vertices().begin(), g.vertices().end(), x.begin(), x.end(),
                      std::back_inserter(vertices));
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!x.contains(e.u) && !x.contains(e.v)) edges.push_back(e);
  }
  return WeightedMultigraph(std::move(vertices), std::move(edges));
}

WeightedMultigraph edge_subgraph(const WeightedMultigraph& g, std::span<const std::size_t> edges) {
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (std::size_t i : edges) kept.push_back(g.edges().at(i));
  return WeightedMultigraph(g.vertices(), std::move(kept));
}

std::vector<std::vector<VertexId>> connected_components(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = find(*g.index_of(e.u));
    auto b = find(*g.index_of(e.v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<VertexId>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(g.vertices()[i]);
  }
  return out;
}

WeightedMultigraph induced_subgraph(const WeightedMultigraph& g, const VertexSet& keep) {
  if (!keep.is_subset_of(g.vertex_set()))
    throw PreconditionError("induced_subgraph: set is not contained in the graph");
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (keep.contains(e.u) && keep.contains(e.v)) edges.push_back(e);
  }
  return WeightedMultigraph(keep.ids(), std::move(edges));
}

WeightedMultigraph with_unit_weights(const WeightedMultigraph& g) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight = 1;
  return WeightedMultigraph(g.vertices(), std::move(edges));
}

}  // namespace pmcount
