#include "pmcount/planarity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include "pmcount/errors.hpp"

namespace pmcount {

namespace {

std::string describe(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Position of each edge inside the rotation of its u-end and v-end.
struct RotationIndex {
  std::vector<std::size_t> at_u;
  std::vector<std::size_t> at_v;
};

RotationIndex index_rotation(const WeightedMultigraph& g,
                             const std::vector<std::vector<std::size_t>>& rotation) {
  RotationIndex idx{std::vector<std::size_t>(g.edge_count()), std::vector<std::size_t>(g.edge_count())};
  for (std::size_t i = 0; i < rotation.size(); ++i) {
    const VertexId v = g.vertices()[i];
    for (std::size_t p = 0; p < rotation[i].size(); ++p) {
      const auto& e = g.edges()[rotation[i][p]];
      (e.u == v ? idx.at_u : idx.at_v)[rotation[i][p]] = p;
    }
  }
  return idx;
}

}  // namespace

std::pair<VertexId, VertexId> dart_ends(const WeightedMultigraph& g, const Dart& d) {
  const auto& e = g.edges()[d.edge];
  return d.forward ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
}

std::vector<FaceWalk> trace_faces(const WeightedMultigraph& g,
                                  const std::vector<std::vector<std::size_t>>& rotation) {
  const auto idx = index_rotation(g, rotation);
  std::vector<char> seen(2 * g.edge_count(), 0);
  auto slot = [](const Dart& d) { return 2 * d.edge + (d.forward ? 0 : 1); };

  std::vector<FaceWalk> faces;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (bool fwd : {true, false}) {
      Dart start{e, fwd};
      if (seen[slot(start)]) continue;
      FaceWalk walk;
      Dart d = start;
      do {
        seen[slot(d)] = 1;
        walk.push_back(d);
        const auto& edge = g.edges()[d.edge];
        const VertexId head = d.forward ? edge.v : edge.u;
        const auto& rot = rotation[*g.index_of(head)];
        const std::size_t p = d.forward ? idx.at_v[d.edge] : idx.at_u[d.edge];
        const std::size_t next = rot[(p + 1) % rot.size()];
        d = Dart{next, g.edges()[next].u == head};
      } while (!(d == start));
      faces.push_back(std::move(walk));
    }
  }
  return faces;
}

PlaneEmbedding embedding_from_rotation(const WeightedMultigraph& g,
                                       std::vector<std::vector<std::size_t>> rotation) {
  PlaneEmbedding emb;
  emb.faces = trace_faces(g, rotation);
  emb.rotation = std::move(rotation);
  std::size_t best = 0;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (emb.faces[f].size() > emb.faces[best].size()) best = f;
  }
  emb.outer_face = best;
  return emb;
}

bool is_valid_embedding(const WeightedMultigraph& g, const PlaneEmbedding& emb) {
  const std::size_t n = g.vertex_count();
  if (emb.rotation.size() != n) return false;
  const auto inc = g.incidence();
  for (std::size_t i = 0; i < n; ++i) {
    auto a = emb.rotation[i];
    auto b = inc[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  if (emb.faces != trace_faces(g, emb.rotation)) return false;
  if (!emb.faces.empty() && emb.outer_face >= emb.faces.size()) return false;

  // Euler per component.
  std::vector<std::size_t> comp_of(n, 0);
  const auto comps = connected_components(g);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) comp_of[*g.index_of(v)] = c;
  }
  std::vector<long> vertices(comps.size(), 0), edges(comps.size(), 0), face_count(comps.size(), 0);
  for (std::size_t i = 0; i < n; ++i) ++vertices[comp_of[i]];
  for (const auto& e : g.edges()) ++edges[comp_of[*g.index_of(e.u)]];
  for (const auto& f : emb.faces) ++face_count[comp_of[*g.index_of(g.edges()[f.front().edge].u)]];
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (edges[c] == 0) continue;
    if (vertices[c] - edges[c] + face_count[c] != 2) return false;
  }
  return true;
}

std::optional<PlaneEmbedding> test_planarity(const WeightedMultigraph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                           boost::property<boost::vertex_index_t, int>,
                                           boost::property<boost::edge_index_t, int>>;
  const std::size_t n = g.vertex_count();

  // Group parallel edges; only the first of each group goes to the tester.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> group_of_pair;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::pair<std::size_t, std::size_t>> ends(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::size_t a = *g.index_of(g.edges()[e].u);
    const std::size_t b = *g.index_of(g.edges()[e].v);
    ends[e] = {a, b};
    auto [it, inserted] = group_of_pair.try_emplace(std::minmax(a, b), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(e);
  }

  BoostGraph bg(n);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto [a, b] = ends[groups[k].front()];
    boost::add_edge(a, b, static_cast<int>(k), bg);
  }

  using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> boost_rotation(n);
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(boost_rotation.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) return std::nullopt;

  std::vector<std::vector<std::size_t>> rotation(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& be : boost_rotation[i]) {
      const auto& group = groups[static_cast<std::size_t>(boost::get(boost::edge_index, bg, be))];
      // Parallel copies fan out in one order at the first endpoint and in the
      // reverse order at the other, which makes consecutive copies bound digons.
      if (ends[group.front()].first == i) {
        rotation[i].insert(rotation[i].end(), group.begin(), group.end());
      } else {
        rotation[i].insert(rotation[i].end(), group.rbegin(), group.rend());
      }
    }
  }
  return embedding_from_rotation(g, std::move(rotation));
}

bool cycle_bounds_face(const WeightedMultigraph& g, const PlaneEmbedding& emb, const VertexSet& c) {
  if (!c.is_subset_of(g.vertex_set()))
    throw PreconditionError("cycle_bounds_face: " + describe(c) + " is not a vertex subset");
  if (c.size() <= 2) return true;

  std::map<VertexId, std::vector<VertexId>> nbrs;
  for (const auto& e : g.edges()) {
    if (c.contains(e.u) && c.contains(e.v)) {
      nbrs[e.u].push_back(e.v);
      nbrs[e.v].push_back(e.u);
    }
  }
  for (VertexId v : c) {
    auto& list = nbrs[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.size() != 2)
      throw PreconditionError("cycle_bounds_face: " + describe(c) + " does not induce a cycle");
  }
  // Connected and 2-regular means a single cycle.
  std::vector<VertexId> stack{c[0]};
  std::vector<VertexId> reached{c[0]};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : nbrs[v]) {
      if (std::find(reached.begin(), reached.end(), w) == reached.end()) {
        reached.push_back(w);
        stack.push_back(w);
      }
    }
  }
  if (reached.size() != c.size())
    throw PreconditionError("cycle_bounds_face: " + describe(c) + " does not induce a cycle");

  for (const auto& walk : emb.faces) {
    if (walk.size() != c.size()) continue;
    std::vector<VertexId> tails;
    for (const auto& d : walk) tails.push_back(dart_ends(g, d).first);
    std::sort(tails.begin(), tails.end());
    if (tails == c.ids()) return true;
  }
  return false;
}

bool on_common_face(const WeightedMultigraph& g, const PlaneEmbedding& emb,
                    std::span<const VertexId> externals, std::size_t* face_out) {
  const auto inc = g.incidence();
  std::vector<VertexId> wanted;
  for (VertexId v : externals) {
    auto i = g.index_of(v);
    if (!i) return false;
    if (!inc[*i].empty()) wanted.push_back(v);
  }
  if (wanted.empty()) {
    if (face_out) *face_out = emb.outer_face;
    return true;
  }
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    std::vector<VertexId> tails;
    for (const auto& d : emb.faces[f]) tails.push_back(dart_ends(g, d).first);
    std::sort(tails.begin(), tails.end());
    bool all = std::all_of(wanted.begin(), wanted.end(),
                           [&](VertexId v) { return std::binary_search(tails.begin(), tails.end(), v); });
    if (all) {
      if (face_out) *face_out = f;
      return true;
    }
  }
  return false;
}

std::pair<WeightedMultigraph, PlaneEmbedding> restrict_embedding(const WeightedMultigraph& g,
                                                                 const PlaneEmbedding& emb,
                                                                 std::span<const std::size_t> edges) {
  std::vector<std::size_t> new_index(g.edge_count(), g.edge_count());
  for (std::size_t i = 0; i < edges.size(); ++i) new_index[edges[i]] = i;
  WeightedMultigraph sub = edge_subgraph(g, edges);
  std::vector<std::vector<std::size_t>> rotation(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t e : emb.rotation[v]) {
      if (new_index[e] != g.edge_count()) rotation[v].push_back(new_index[e]);
    }
  }
  auto sub_emb = embedding_from_rotation(sub, std::move(rotation));
  return {std::move(sub), std::move(sub_emb)};
}

std::pair<WeightedMultigraph, PlaneEmbedding> delete_vertices_embedded(const WeightedMultigraph& g,
                                                                       const PlaneEmbedding& emb,
                                                                       const VertexSet& x) {
  WeightedMultigraph h = delete_vertices(g, x);
  std::vector<std::size_t> new_index(g.edge_count(), g.edge_count());
  std::size_t next = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!x.contains(g.edges()[e].u) && !x.contains(g.edges()[e].v)) new_index[e] = next++;
  }
  std::vector<std::vector<std::size_t>> rotation;
  rotation.reserve(h.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (x.contains(g.vertices()[v])) continue;
    rotation.emplace_back();
    for (std::size_t e : emb.rotation[v]) {
      if (new_index[e] != g.edge_count()) rotation.back().push_back(new_index[e]);
    }
  }
  auto h_emb = embedding_from_rotation(h, std::move(rotation));
  return {std::move(h), std::move(h_emb)};
}

Spliced splice_in_faces(const WeightedMultigraph& host, const PlaneEmbedding& host_embedding,
                        std::span<const SplicePiece> pieces) {
  const VertexSet host_vertices = host.vertex_set();
  std::vector<VertexId> vertices = host.vertices();
  std::vector<Edge> edges = host.edges();
  VertexSet used = host_vertices;

  for (const auto& piece : pieces) {
    const auto& k = piece.clique;
    if (k.size() > 3)
      throw PreconditionError("splice: clique " + describe(k) + " has more than three vertices");
    if (!k.is_subset_of(host_vertices))
      throw PreconditionError("splice: clique " + describe(k) + " is not in the host");
    if (!k.is_subset_of(piece.gadget->vertex_set()))
      throw PreconditionError("splice: clique " + describe(k) + " is not in the gadget");
    if (k.size() == 3 && !cycle_bounds_face(host, host_embedding, k))
      throw PreconditionError("splice: clique " + describe(k) + " does not bound a face of the host");
    if (!on_common_face(*piece.gadget, *piece.gadget_embedding, k.ids()))
      throw PreconditionError("splice: clique " + describe(k) + " is not on one face of the gadget");

    const VertexSet inner = piece.gadget->vertex_set().set_difference(k);
    if (!inner.set_intersection(used).empty())
      throw PreconditionError("splice: gadget for " + describe(k) + " reuses a vertex id");
    used = used.set_union(inner);
    vertices.insert(vertices.end(), inner.begin(), inner.end());
    edges.insert(edges.end(), piece.gadget->edges().begin(), piece.gadget->edges().end());
  }

  WeightedMultigraph graph(std::move(vertices), std::move(edges));
  auto emb = test_planarity(graph);
  if (!emb) throw ConsistencyError("splice: result is not planar although all preconditions hold");
  return Spliced{std::move(graph), std::move(*emb)};
}

Spliced splice_in_face(const WeightedMultigraph& host, const PlaneEmbedding& host_embedding,
                       const WeightedMultigraph& gadget, const PlaneEmbedding& gadget_embedding,
                       const VertexSet& clique) {
  const SplicePiece piece{&gadget, &gadget_embedding, clique};
  return splice_in_faces(host, host_embedding, std::span<const SplicePiece>(&piece, 1));
}

}  // namespace pmcount
