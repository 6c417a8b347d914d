#pragma once

#include <random>
#include <vector>

#include "pmcount/graph.hpp"
#include "pmcount/oracle.hpp"

namespace pmcount::testing {

inline WeightedMultigraph complete_graph(VertexId n, Rational w = 1) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (VertexId a = 1; a <= n; ++a) {
    vs.push_back(a);
    for (VertexId b = a + 1; b <= n; ++b) es.push_back({a, b, w});
  }
  return WeightedMultigraph(std::move(vs), std::move(es));
}

inline WeightedMultigraph k33() {
  std::vector<Edge> es;
  for (VertexId a = 1; a <= 3; ++a) {
    for (VertexId b = 4; b <= 6; ++b) es.push_back({a, b, 1});
  }
  return WeightedMultigraph({1, 2, 3, 4, 5, 6}, std::move(es));
}

inline WeightedMultigraph cycle(VertexId n, const std::vector<Rational>& w = {}) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (VertexId i = 1; i <= n; ++i) {
    vs.push_back(i);
    es.push_back({i, i % n + 1, w.empty() ? Rational(1) : w[i - 1]});
  }
  return WeightedMultigraph(std::move(vs), std::move(es));
}

inline WeightedMultigraph octahedron() {
  std::vector<Edge> es;
  for (VertexId a = 1; a <= 6; ++a) {
    for (VertexId b = a + 1; b <= 6; ++b) {
      if (b != a + 3) es.push_back({a, b, 1});
    }
  }
  return WeightedMultigraph({1, 2, 3, 4, 5, 6}, std::move(es));
}

inline Rational random_rational(std::mt19937_64& rng, int lo = -3, int hi = 3, int den = 3) {
  Rational r(std::uniform_int_distribution<int>(lo, hi)(rng), std::uniform_int_distribution<int>(1, den)(rng));
  r.canonicalize();
  return r;
}

// Random multigraph on ids first..first+n-1; parallel edges and zero weights allowed.
inline WeightedMultigraph random_multigraph(std::mt19937_64& rng, std::size_t n, double p, VertexId first = 1) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(first + static_cast<VertexId>(i));
  std::bernoulli_distribution keep(p), twice(0.15);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!keep(rng)) continue;
      es.push_back({vs[i], vs[j], random_rational(rng)});
      if (twice(rng)) es.push_back({vs[i], vs[j], random_rational(rng)});
    }
  }
  return WeightedMultigraph(std::move(vs), std::move(es));
}

// Adds a pendant vertex when the order is odd; a 1-sum with an edge keeps the graph in its class.
inline WeightedMultigraph make_even(WeightedMultigraph g, Rational w = 1) {
  if (g.vertex_count() % 2 == 1) {
    const VertexId extra = g.max_vertex_id() + 1;
    const VertexId anchor = g.vertices().front();
    g.add_vertex(extra);
    g.add_edge(anchor, extra, std::move(w));
  }
  return g;
}

}  // namespace pmcount::testing
