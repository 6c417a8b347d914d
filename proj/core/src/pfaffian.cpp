#include "pmcount/pfaffian.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "pmcount/errors.hpp"

namespace pmcount {

std::size_t clockwise_count(const FaceWalk& walk, const KasteleynOrientation& orientation) {
  std::size_t count = 0;
  for (const auto& d : walk) {
    if (orientation.forward[d.edge] == d.forward) ++count;
  }
  return count;
}

bool is_kasteleyn(const PlaneEmbedding& emb, const KasteleynOrientation& orientation) {
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (f == emb.outer_face) continue;
    if (clockwise_count(emb.faces[f], orientation) % 2 == 0) return false;
  }
  return true;
}

KasteleynOrientation kasteleyn_orient(const WeightedMultigraph& g, const PlaneEmbedding& emb) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (connected_components(g).size() > 1)
    throw PreconditionError("kasteleyn_orient: graph is not connected");
  {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (const auto& e : g.edges()) pairs.push_back(std::minmax(e.u, e.v));
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
      throw PreconditionError("kasteleyn_orient: parallel edges must be merged first");
  }

  KasteleynOrientation orient{std::vector<bool>(m, true)};
  if (m == 0) return orient;

  // Spanning tree; tree edges keep the default u -> v direction.
  std::vector<char> in_tree(m, 0);
  {
    const auto inc = g.incidence();
    std::vector<char> reached(n, 0);
    std::deque<std::size_t> queue{0};
    reached[0] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : inc[v]) {
        const std::size_t w = *g.index_of(g.edges()[e].other(g.vertices()[v]));
        if (!reached[w]) {
          reached[w] = 1;
          in_tree[e] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  // The remaining edges form a spanning tree of the dual.
  const std::size_t faces = emb.faces.size();
  std::vector<std::size_t> face_of(2 * m);
  for (std::size_t f = 0; f < faces; ++f) {
    for (const auto& d : emb.faces[f]) face_of[2 * d.edge + (d.forward ? 0 : 1)] = f;
  }
  std::vector<std::vector<std::size_t>> dual(faces);
  for (std::size_t e = 0; e < m; ++e) {
    if (in_tree[e]) continue;
    dual[face_of[2 * e]].push_back(e);
    dual[face_of[2 * e + 1]].push_back(e);
  }

  std::vector<std::size_t> order;
  std::vector<std::size_t> parent_edge(faces, m);
  std::vector<char> visited(faces, 0);
  order.push_back(emb.outer_face);
  visited[emb.outer_face] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t f = order[head];
    for (std::size_t e : dual[f]) {
      const std::size_t other = face_of[2 * e] == f ? face_of[2 * e + 1] : face_of[2 * e];
      if (!visited[other]) {
        visited[other] = 1;
        parent_edge[other] = e;
        order.push_back(other);
      }
    }
  }
  if (order.size() != faces) throw ConsistencyError("kasteleyn_orient: dual tree does not reach every face");

  // Peel leaves first; each face fixes the edge towards its parent.
  for (std::size_t i = order.size(); i-- > 1;) {
    const std::size_t f = order[i];
    const std::size_t e = parent_edge[f];
    std::size_t count = 0;
    bool dart_forward = true;
    for (const auto& d : emb.faces[f]) {
      if (d.edge == e) {
        dart_forward = d.forward;
        continue;
      }
      if (orient.forward[d.edge] == d.forward) ++count;
    }
    orient.forward[e] = (count % 2 == 0) ? dart_forward : !dart_forward;
  }
  return orient;
}

void SkewMatrix::set(std::size_t i, std::size_t j, const Rational& x) {
  ref(i, j) = x;
  ref(j, i) = -x;
}

void SkewMatrix::add(std::size_t i, std::size_t j, const Rational& x) {
  ref(i, j) += x;
  ref(j, i) -= x;
}

bool SkewMatrix::is_skew() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(at(i, i)) != 0) return false;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (at(i, j) != -at(j, i)) return false;
    }
  }
  return true;
}

SkewMatrix oriented_matrix(const WeightedMultigraph& g, const KasteleynOrientation& orientation) {
  SkewMatrix a(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    const std::size_t i = *g.index_of(edge.u);
    const std::size_t j = *g.index_of(edge.v);
    if (orientation.forward[e]) {
      a.add(i, j, edge.weight);
    } else {
      a.add(j, i, edge.weight);
    }
  }
  return a;
}

Rational pfaffian_exact(SkewMatrix a) {
  if (!a.is_skew()) throw PreconditionError("pfaffian_exact: matrix is not skew-symmetric");
  const std::size_t n = a.size();
  if (n % 2 == 1) return 0;

  Rational pf = 1;
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t pivot = k + 1;
    while (pivot < n && sgn(a.at(k, pivot)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k + 1) {
      // Symmetric swap of index k+1 and pivot flips the sign.
      for (std::size_t r = 0; r < n; ++r) std::swap(a.ref(r, k + 1), a.ref(r, pivot));
      for (std::size_t c = 0; c < n; ++c) std::swap(a.ref(k + 1, c), a.ref(pivot, c));
      pf = -pf;
    }
    const Rational piv = a.at(k, k + 1);
    pf *= piv;
    const Rational inv = 1 / piv;

    live.clear();
    for (std::size_t j = k + 2; j < n; ++j) {
      if (sgn(a.at(k, j)) != 0 || sgn(a.at(k + 1, j)) != 0) live.push_back(j);
    }
    // Schur complement of the leading 2x2 block:
    // a(i,j) += (a(k+1,i) a(k,j) - a(k,i) a(k+1,j)) / a(k,k+1).
    Rational t;
    for (std::size_t x = 0; x < live.size(); ++x) {
      const std::size_t i = live[x];
      for (std::size_t y = x + 1; y < live.size(); ++y) {
        const std::size_t j = live[y];
        t = a.at(k + 1, i) * a.at(k, j) - a.at(k, i) * a.at(k + 1, j);
        if (sgn(t) == 0) continue;
        t *= inv;
        a.ref(i, j) += t;
        a.ref(j, i) = -a.at(i, j);
      }
    }
  }
  return pf;
}

Rational perfmatch_planar(const WeightedMultigraph& g) {
  const WeightedMultigraph merged = merge_parallel(g);
  const auto comps = connected_components(merged);
  std::vector<std::size_t> comp_of(merged.vertex_count());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) comp_of[*merged.index_of(v)] = c;
  }
  std::vector<std::vector<Edge>> comp_edges(comps.size());
  for (const auto& e : merged.edges()) comp_edges[comp_of[*merged.index_of(e.u)]].push_back(e);

  std::vector<WeightedMultigraph> parts;
  std::vector<PlaneEmbedding> embeddings;
  bool odd = false;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<VertexId> vs = comps[c];
    std::sort(vs.begin(), vs.end());
    parts.emplace_back(std::move(vs), std::move(comp_edges[c]));
    auto emb = test_planarity(parts.back());
    if (!emb) throw NotPlanarError("perfmatch_planar: graph is not planar");
    embeddings.push_back(std::move(*emb));
    odd = odd || comps[c].size() % 2 == 1;
  }
  if (odd) return 0;

  Rational result = 1;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto orient = kasteleyn_orient(parts[c], embeddings[c]);
    // All matchings carry the same sign under a Kasteleyn orientation; the
    // unit-weight Pfaffian exposes that sign (or proves there is no matching).
    const Rational count = pfaffian_exact(oriented_matrix(with_unit_weights(parts[c]), orient));
    if (sgn(count) == 0) return 0;
    Rational value = pfaffian_exact(oriented_matrix(parts[c], orient));
    if (sgn(count) < 0) value = -value;
    result *= value;
  }
  return result;
}

}  // namespace pmcount
