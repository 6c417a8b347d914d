#include "pmcount/decomposition.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "pmcount/errors.hpp"
#include "pmcount/large_stack.hpp"
#include "pmcount/triconnected.hpp"

namespace pmcount {

namespace {

std::string set_text(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Root-first order; throws if the parent links do not form a tree.
std::vector<NodeId> tree_order(const DecompositionTree& t) {
  if (!t.nodes.count(t.root)) throw InvalidDecompositionError("root node " + std::to_string(t.root) + " is missing");
  if (t.nodes.at(t.root).parent)
    throw InvalidDecompositionError("root node " + std::to_string(t.root) + " has a parent");
  for (const auto& [id, node] : t.nodes) {
    if (id != t.root && !node.parent)
      throw InvalidDecompositionError("node " + std::to_string(id) + " has no parent but is not the root");
    if (node.parent && !t.nodes.count(*node.parent))
      throw InvalidDecompositionError("node " + std::to_string(id) + " has a missing parent");
  }
  const auto kids = t.children();
  std::vector<NodeId> order{t.root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (NodeId c : kids.at(order[i])) order.push_back(c);
  }
  if (order.size() != t.nodes.size()) throw InvalidDecompositionError("parent links contain a cycle");
  return order;
}

bool adjacent_in(const WeightedMultigraph& g, VertexId a, VertexId b) {
  return std::any_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return (e.u == a && e.v == b) || (e.u == b && e.v == a); });
}

WeightedMultigraph with_weights(const WeightedMultigraph& g, const std::vector<Rational>& w) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = w[i];
  return WeightedMultigraph(g.vertices(), std::move(edges));
}

// First edge index joining a and b, if any.
std::optional<std::size_t> edge_between(const WeightedMultigraph& g, VertexId a, VertexId b) {
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return i;
  }
  return std::nullopt;
}

}  // namespace

std::map<NodeId, std::vector<NodeId>> DecompositionTree::children() const {
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& [id, node] : nodes) out[id];
  for (const auto& [id, node] : nodes) {
    if (node.parent && out.count(*node.parent)) out[*node.parent].push_back(id);
  }
  return out;
}

bool same_tree(const DecompositionTree& a, const DecompositionTree& b) {
  if (a.c != b.c || a.root != b.root || a.nodes.size() != b.nodes.size()) return false;
  for (const auto& [id, x] : a.nodes) {
    auto it = b.nodes.find(id);
    if (it == b.nodes.end()) return false;
    const auto& y = it->second;
    if (x.parent != y.parent || !(x.navel == y.navel) || !(x.graph == y.graph)) return false;
    if (x.embedding.has_value() != y.embedding.has_value()) return false;
    if (x.embedding && x.embedding->rotation != y.embedding->rotation) return false;
  }
  return true;
}

WeightedMultigraph canonical_form(const WeightedMultigraph& g) {
  std::vector<Edge> edges = strip_zero_edges(merge_parallel(g)).edges();
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  return WeightedMultigraph(g.vertices(), std::move(edges));
}

WeightedMultigraph compose(const DecompositionTree& t) {
  const auto order = tree_order(t);
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  for (NodeId id : order) {
    const auto& g = t.nodes.at(id).graph;
    vertices.insert(vertices.end(), g.vertices().begin(), g.vertices().end());
    edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return WeightedMultigraph(std::move(vertices), std::move(edges));
}

std::string describe(const Violation& v) {
  std::string out = v.kind;
  if (!v.nodes.empty()) {
    out += " [node";
    for (NodeId id : v.nodes) out += " " + std::to_string(id);
    out += "]";
  }
  return out + ": " + v.message;
}

std::vector<Violation> validate(const DecompositionTree& t, const WeightedMultigraph& g) {
  std::vector<Violation> out;
  try {
    tree_order(t);
  } catch (const InvalidDecompositionError& e) {
    out.push_back({"tree-shape", {}, e.what()});
    return out;
  }
  const auto kids = t.children();

  for (const auto& [id, node] : t.nodes) {
    if (!node.parent) {
      if (!node.navel.empty()) out.push_back({"navel", {id}, "root navel must be empty"});
      continue;
    }
    const auto& pg = t.nodes.at(*node.parent).graph;
    const VertexSet shared = pg.vertex_set().set_intersection(node.graph.vertex_set());
    if (!(shared == node.navel)) {
      out.push_back({"navel", {*node.parent, id},
                     "navel " + set_text(node.navel) + " differs from the shared vertices " + set_text(shared)});
    }
    if (node.navel.size() > 3)
      out.push_back({"clique-size", {*node.parent, id}, "attachment clique has " + std::to_string(node.navel.size()) + " vertices"});
    for (std::size_t i = 0; i < node.navel.size(); ++i) {
      for (std::size_t j = i + 1; j < node.navel.size(); ++j) {
        const VertexId a = node.navel[i], b = node.navel[j];
        if (!adjacent_in(pg, a, b) && !adjacent_in(node.graph, a, b)) {
          out.push_back({"clique", {*node.parent, id},
                         "navel vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent"});
        }
      }
    }
  }

  // Nodes holding v minus tree edges whose shared set holds v counts the
  // components of the subtree spanned by v.
  std::map<VertexId, long> pieces;
  for (const auto& [id, node] : t.nodes) {
    for (VertexId v : node.graph.vertices()) ++pieces[v];
    if (node.parent) {
      const auto& pg = t.nodes.at(*node.parent).graph;
      for (VertexId v : pg.vertex_set().set_intersection(node.graph.vertex_set())) --pieces[v];
    }
  }
  for (const auto& [v, count] : pieces) {
    if (count != 1) {
      std::vector<NodeId> holders;
      for (const auto& [id, node] : t.nodes) {
        if (node.graph.has_vertex(v)) holders.push_back(id);
      }
      out.push_back({"running-intersection", holders,
                     "nodes containing vertex " + std::to_string(v) + " are not connected"});
    }
  }

  for (const auto& [id, node] : t.nodes) {
    const bool large = node.graph.vertex_count() > t.c;
    if (large && !node.embedding) {
      out.push_back({"embedding", {id}, "node has more than c vertices but no embedding"});
      continue;
    }
    if (node.embedding && !is_valid_embedding(node.graph, *node.embedding)) {
      out.push_back({"embedding", {id}, "embedding is not a valid plane embedding"});
      continue;
    }
    if (!large) continue;
    for (NodeId c : kids.at(id)) {
      const VertexSet& k = t.nodes.at(c).navel;
      if (k.size() != 3 || k == node.navel || !k.is_subset_of(node.graph.vertex_set())) continue;
      bool facial = false;
      try {
        facial = cycle_bounds_face(node.graph, *node.embedding, k);
      } catch (const PreconditionError&) {
        facial = false;
      }
      if (!facial)
        out.push_back({"face", {id, c}, "attachment clique " + set_text(k) + " does not bound a face"});
    }
  }

  const WeightedMultigraph composed = canonical_form(compose(t));
  const WeightedMultigraph target = canonical_form(g);
  if (composed.vertices() != target.vertices()) {
    out.push_back({"composition", {}, "composed vertex set differs from the graph"});
  } else if (!(composed.edges() == target.edges())) {
    out.push_back({"composition", {}, "composed edges differ from the graph"});
  }
  return out;
}

namespace {

// One split for a non-facial attachment triangle k of node id. Returns the id
// of the new node.
NodeId repair_once(DecompositionTree& t, NodeId id, const VertexSet& k) {
  DecompositionNode& node = t.nodes.at(id);
  const WeightedMultigraph& g = node.graph;
  const PlaneEmbedding& emb = *node.embedding;

  std::array<std::size_t, 3> cyc{};
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {1, 2}, {0, 2}}};
  for (int i = 0; i < 3; ++i) {
    auto e = edge_between(g, k[pairs[i].first], k[pairs[i].second]);
    if (!e) throw InvalidDecompositionError("attachment clique " + set_text(k) + " is not a triangle of node " + std::to_string(id));
    cyc[i] = *e;
  }

  const std::size_t f = emb.faces.size();
  std::vector<std::size_t> face_of(2 * g.edge_count());
  for (std::size_t i = 0; i < f; ++i) {
    for (const auto& d : emb.faces[i]) face_of[2 * d.edge + (d.forward ? 0 : 1)] = i;
  }
  std::vector<std::size_t> uf(f);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (std::find(cyc.begin(), cyc.end(), e) != cyc.end()) continue;
    uf[find(face_of[2 * e])] = find(face_of[2 * e + 1]);
  }
  const std::size_t side_a = find(face_of[2 * cyc[0]]);
  const std::size_t side_b = find(face_of[2 * cyc[0] + 1]);
  if (side_a == side_b) throw ConsistencyError("face_repair: triangle " + set_text(k) + " does not separate");

  std::set<VertexId> va, vb;
  for (std::size_t i = 0; i < f; ++i) {
    const std::size_t r = find(i);
    if (r != side_a && r != side_b) continue;
    for (const auto& d : emb.faces[i]) {
      const VertexId v = dart_ends(g, d).first;
      if (!k.contains(v)) (r == side_a ? va : vb).insert(v);
    }
  }
  const VertexSet a(std::vector<VertexId>(va.begin(), va.end()));
  const VertexSet b(std::vector<VertexId>(vb.begin(), vb.end()));
  const VertexSet outside_navel = node.navel.set_difference(k);
  const bool navel_a = !outside_navel.set_intersection(a).empty();
  const bool navel_b = !outside_navel.set_intersection(b).empty();
  if (navel_a && navel_b)
    throw InvalidDecompositionError("navel of node " + std::to_string(id) + " lies on both sides of " + set_text(k));
  VertexSet inner;
  if (navel_a) {
    inner = b;
  } else if (navel_b) {
    inner = a;
  } else {
    const std::size_t outer = find(emb.outer_face);
    if (outer == side_a) {
      inner = b;
    } else if (outer == side_b) {
      inner = a;
    } else {
      inner = a.size() <= b.size() ? a : b;
    }
  }
  if (inner.empty()) throw ConsistencyError("face_repair: empty side for " + set_text(k));

  std::vector<std::size_t> inner_edges, outer_edges;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    (inner.contains(edge.u) || inner.contains(edge.v) ? inner_edges : outer_edges).push_back(e);
  }
  std::vector<std::size_t> new_edges = inner_edges;
  new_edges.insert(new_edges.end(), cyc.begin(), cyc.end());

  const VertexSet f_vertices = inner.set_union(k);
  auto [sub_new, emb_new] = restrict_embedding(g, emb, new_edges);
  std::tie(sub_new, emb_new) = delete_vertices_embedded(sub_new, emb_new, g.vertex_set().set_difference(f_vertices));
  std::vector<Rational> w;
  for (const auto& e : sub_new.edges()) w.push_back(e.weight);
  for (std::size_t i = w.size() - 3; i < w.size(); ++i) w[i] = 0;
  sub_new = with_weights(sub_new, w);

  auto [sub_old, emb_old] = restrict_embedding(g, emb, outer_edges);
  std::tie(sub_old, emb_old) = delete_vertices_embedded(sub_old, emb_old, inner);

  const NodeId fresh = t.next_free_id();
  for (auto& [cid, child] : t.nodes) {
    if (child.parent != id) continue;
    const VertexSet beyond = child.navel.set_difference(k);
    if (beyond.empty()) continue;
    const bool in_f = !beyond.set_intersection(inner).empty();
    if (!in_f) continue;
    if (!child.navel.is_subset_of(f_vertices))
      throw InvalidDecompositionError("attachment clique of node " + std::to_string(cid) + " straddles " + set_text(k));
    child.parent = fresh;
  }

  DecompositionNode split;
  split.parent = id;
  split.navel = k;
  split.graph = std::move(sub_new);
  split.embedding = std::move(emb_new);
  node.graph = std::move(sub_old);
  node.embedding = std::move(emb_old);
  t.nodes.emplace(fresh, std::move(split));
  return fresh;
}

std::optional<VertexSet> offending_triangle(const DecompositionTree& t, NodeId id,
                                            const std::map<NodeId, std::vector<NodeId>>& kids) {
  const auto& node = t.nodes.at(id);
  if (!node.embedding) return std::nullopt;
  for (NodeId c : kids.at(id)) {
    const VertexSet& k = t.nodes.at(c).navel;
    if (k.size() != 3 || k == node.navel) continue;
    bool facial = false;
    try {
      facial = cycle_bounds_face(node.graph, *node.embedding, k);
    } catch (const PreconditionError&) {
      throw InvalidDecompositionError("attachment clique " + set_text(k) + " is not a triangle of node " + std::to_string(id));
    }
    if (!facial) return k;
  }
  return std::nullopt;
}

}  // namespace

DecompositionTree face_repair(const DecompositionTree& input, NodeId id) {
  if (!input.nodes.count(id)) throw PreconditionError("face_repair: unknown node " + std::to_string(id));
  if (!input.nodes.at(id).embedding) throw PreconditionError("face_repair: node has no embedding");
  DecompositionTree t = input;
  std::vector<NodeId> work{id};
  while (!work.empty()) {
    const NodeId x = work.back();
    const auto kids = t.children();
    auto k = offending_triangle(t, x, kids);
    if (!k) {
      work.pop_back();
      continue;
    }
    work.push_back(repair_once(t, x, *k));
  }
  return t;
}

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

std::vector<std::string> check_tree_decomposition(const WeightedMultigraph& g, const TreeDecomposition& r) {
  std::vector<std::string> out;
  const std::size_t nb = r.bags.size();
  if (nb == 0) {
    if (g.vertex_count() > 0) out.push_back("no bags");
    return out;
  }
  if (r.parent.size() != nb) {
    out.push_back("parent list length differs from bag count");
    return out;
  }
  std::size_t roots = 0;
  std::vector<std::vector<std::size_t>> kids(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    if (!r.parent[i]) {
      ++roots;
    } else if (*r.parent[i] >= nb || *r.parent[i] == i) {
      out.push_back("bag " + std::to_string(i) + " has an invalid parent");
      return out;
    } else {
      kids[*r.parent[i]].push_back(i);
    }
    if (!r.bags[i].is_subset_of(g.vertex_set())) out.push_back("bag " + std::to_string(i) + " has unknown vertices");
  }
  if (roots != 1) {
    out.push_back("bags do not form a single rooted tree");
    return out;
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < nb; ++i) {
    if (!r.parent[i]) order.push_back(i);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c : kids[order[i]]) order.push_back(c);
  }
  if (order.size() != nb) {
    out.push_back("bag parents contain a cycle");
    return out;
  }
  for (VertexId v : g.vertices()) {
    long count = 0;
    for (std::size_t i = 0; i < nb; ++i) {
      if (!r.bags[i].contains(v)) continue;
      ++count;
      if (r.parent[i] && r.bags[*r.parent[i]].contains(v)) --count;
    }
    if (count == 0) out.push_back("vertex " + std::to_string(v) + " is in no bag");
    if (count > 1) out.push_back("bags containing vertex " + std::to_string(v) + " are not connected");
  }
  for (const auto& e : g.edges()) {
    const bool covered = std::any_of(r.bags.begin(), r.bags.end(),
                                     [&](const VertexSet& b) { return b.contains(e.u) && b.contains(e.v); });
    if (!covered) out.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag");
  }
  return out;
}

DecompositionTree split_with_treedec(const DecompositionTree& input, NodeId id, const TreeDecomposition& r) {
  if (!input.nodes.count(id)) throw PreconditionError("split_with_treedec: unknown node " + std::to_string(id));
  DecompositionTree t = input;
  const DecompositionNode node = t.nodes.at(id);
  const WeightedMultigraph& g = node.graph;
  if (auto problems = check_tree_decomposition(g, r); !problems.empty())
    throw PreconditionError("split_with_treedec: " + problems.front());
  for (const auto& b : r.bags) {
    if (b.size() > t.c + 1) throw PreconditionError("split_with_treedec: a bag exceeds width c");
  }

  const std::size_t nb = r.bags.size();
  std::size_t root_bag = nb;
  for (std::size_t i = 0; i < nb; ++i) {
    if (node.navel.is_subset_of(r.bags[i])) {
      root_bag = i;
      break;
    }
  }
  if (root_bag == nb) throw PreconditionError("split_with_treedec: no bag contains the navel");

  // Re-root the bag tree.
  std::vector<std::vector<std::size_t>> nbr(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    if (r.parent[i]) {
      nbr[i].push_back(*r.parent[i]);
      nbr[*r.parent[i]].push_back(i);
    }
  }
  std::vector<std::size_t> order{root_bag}, depth(nb, 0);
  std::vector<std::optional<std::size_t>> up(nb);
  std::vector<bool> seen(nb, false);
  seen[root_bag] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c : nbr[order[i]]) {
      if (seen[c]) continue;
      seen[c] = true;
      up[c] = order[i];
      depth[c] = depth[order[i]] + 1;
      order.push_back(c);
    }
  }

  std::vector<NodeId> node_of(nb);
  NodeId fresh = t.next_free_id();
  for (std::size_t b : order) node_of[b] = b == root_bag ? id : fresh++;

  auto topmost = [&](const VertexSet& s) {
    std::optional<std::size_t> best;
    for (std::size_t b : order) {
      if (s.is_subset_of(r.bags[b]) && (!best || depth[b] < depth[*best])) best = b;
    }
    return best;
  };

  std::vector<std::vector<Edge>> edges(nb);
  for (const auto& e : g.edges()) edges[*topmost(VertexSet{e.u, e.v})].push_back(e);

  for (auto& [cid, child] : t.nodes) {
    if (child.parent != id) continue;
    auto b = topmost(child.navel);
    if (!b) throw PreconditionError("split_with_treedec: no bag contains the attachment clique of node " + std::to_string(cid));
    child.parent = node_of[*b];
  }

  for (std::size_t b : order) {
    DecompositionNode out;
    if (up[b]) {
      const VertexSet shared = r.bags[b].set_intersection(r.bags[*up[b]]);
      if (shared.size() > 3)
        throw PreconditionError("split_with_treedec: adjacent bags share more than three vertices");
      for (std::size_t i = 0; i < shared.size(); ++i) {
        for (std::size_t j = i + 1; j < shared.size(); ++j) edges[b].push_back({shared[i], shared[j], 0});
      }
      out.parent = node_of[*up[b]];
      out.navel = shared;
    } else {
      out.parent = node.parent;
      out.navel = node.navel;
    }
    out.graph = WeightedMultigraph(r.bags[b].ids(), std::move(edges[b]));
    if (out.graph.vertex_count() > t.c) {
      out.embedding = test_planarity(out.graph);
      if (!out.embedding) throw PreconditionError("split_with_treedec: a bag of c+1 vertices is not planar");
    }
    t.nodes[node_of[b]] = std::move(out);
  }

  // Large bags must still see their attachment triangles as faces.
  for (std::size_t b : order) {
    const NodeId nid = node_of[b];
    if (t.nodes.at(nid).graph.vertex_count() <= t.c) continue;
    if (offending_triangle(t, nid, t.children())) t = face_repair(t, nid);
  }
  return t;
}

TreeDecomposition exact_tree_decomposition(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw PreconditionError("exact_tree_decomposition: more than 20 vertices");
  TreeDecomposition out;
  if (n == 0) return out;
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    const std::size_t i = *g.index_of(e.u), j = *g.index_of(e.v);
    adj[i] |= 1u << j;
    adj[j] |= 1u << i;
  }
  // Vertices outside s and v reachable from v through s.
  auto q = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t reach = 1u << v, frontier = reach;
    std::uint32_t result = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[__builtin_ctz(f)];
      result |= next & ~s & ~(1u << v);
      next &= s & ~reach;
      reach |= next;
      frontier = next;
    }
    return result;
  };
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0), choice(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int b = 255;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const std::size_t v = static_cast<std::size_t>(__builtin_ctz(rest));
      const std::uint32_t prev = s & ~(1u << v);
      const int w = std::max<int>(best[prev], __builtin_popcount(q(prev, v)));
      if (w < b) {
        b = w;
        choice[s] = static_cast<std::uint8_t>(v);
      }
    }
    best[s] = static_cast<std::uint8_t>(b);
  }

  std::vector<std::size_t> elim;
  for (std::uint32_t s = full; s; s &= ~(1u << choice[s])) elim.push_back(choice[s]);
  std::reverse(elim.begin(), elim.end());
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[elim[i]] = i;

  std::uint32_t done = 0;
  out.bags.resize(n);
  out.parent.resize(n);
  std::optional<std::size_t> last_root;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = elim[i];
    const std::uint32_t later = q(done, v);
    std::vector<VertexId> bag{g.vertices()[v]};
    std::optional<std::size_t> parent;
    for (std::uint32_t f = later; f; f &= f - 1) {
      const std::size_t w = static_cast<std::size_t>(__builtin_ctz(f));
      bag.push_back(g.vertices()[w]);
      if (!parent || pos[w] < pos[*parent]) parent = w;
    }
    out.bags[i] = VertexSet(std::move(bag));
    if (parent) out.parent[i] = pos[*parent];
    done |= 1u << v;
  }
  // Chain the roots of a forest together.
  for (std::size_t i = 0; i < n; ++i) {
    if (out.parent[i]) continue;
    if (last_root) out.parent[*last_root] = i;
    last_root = i;
  }
  return out;
}

bool is_k5(const WeightedMultigraph& g) {
  if (g.vertex_count() != 5) return false;
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : g.edges()) pairs.insert(std::minmax(e.u, e.v));
  return pairs.size() == 10;
}

namespace {

struct Block {
  std::vector<std::size_t> edges;
  VertexId attach;
};

// Blocks of one connected component (edge indices of g), emitted children
// first. home[v] is the block in which v is not the attachment vertex.
std::vector<Block> blocks_of(const WeightedMultigraph& g, const std::vector<std::vector<std::size_t>>& inc,
                             std::size_t root, std::map<VertexId, std::size_t>& home) {
  const std::size_t n = g.vertex_count();
  const std::size_t none = g.edge_count();
  std::vector<std::size_t> disc(n, 0), low(n, 0);
  struct Frame {
    std::size_t v, pe, idx;
  };
  std::vector<Frame> frames{{root, none, 0}};
  std::vector<std::size_t> estack;
  std::vector<Block> blocks;
  std::size_t clock = 0;
  disc[root] = low[root] = ++clock;
  while (!frames.empty()) {
    Frame& f = frames.back();
    const std::size_t v = f.v;
    if (f.idx < inc[v].size()) {
      const std::size_t e = inc[v][f.idx++];
      if (e == f.pe) continue;
      const std::size_t w = *g.index_of(g.edges()[e].other(g.vertices()[v]));
      if (!disc[w]) {
        estack.push_back(e);
        disc[w] = low[w] = ++clock;
        frames.push_back({w, e, 0});
      } else if (disc[w] < disc[v]) {
        estack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    const std::size_t pe = f.pe;
    frames.pop_back();
    if (frames.empty()) break;
    const std::size_t p = frames.back().v;
    low[p] = std::min(low[p], low[v]);
    if (low[v] >= disc[p]) {
      Block b{{}, g.vertices()[p]};
      while (true) {
        const std::size_t e = estack.back();
        estack.pop_back();
        b.edges.push_back(e);
        if (e == pe) break;
      }
      for (std::size_t e : b.edges) {
        for (VertexId x : {g.edges()[e].u, g.edges()[e].v}) {
          if (x != b.attach) home[x] = blocks.size();
        }
      }
      blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

DecompositionNode classified_node(WeightedMultigraph graph, std::size_t c) {
  DecompositionNode node;
  node.embedding = test_planarity(graph);
  if (!node.embedding) {
    if (graph.vertex_count() > c || !is_k5(graph)) {
      std::string vs;
      for (std::size_t i = 0; i < graph.vertex_count() && i < 12; ++i) vs += " " + std::to_string(graph.vertices()[i]);
      throw NotInClassError("triconnected component on " + std::to_string(graph.vertex_count()) +
                            " vertices (" + vs + (graph.vertex_count() > 12 ? " ..." : " ") +
                            ") is neither planar nor K5, so the graph has a K3,3 minor");
    }
  }
  node.graph = std::move(graph);
  return node;
}

DecompositionTree decompose_impl(const WeightedMultigraph& input) {
  const WeightedMultigraph g = strip_zero_edges(merge_parallel(input));
  DecompositionTree t;
  t.c = 5;
  const auto inc = g.incidence();
  const auto comps = connected_components(g);

  NodeId next = 0;
  std::optional<NodeId> global_root;
  if (comps.size() != 1) {
    DecompositionNode root;
    root.embedding = test_planarity(root.graph);
    global_root = next++;
    t.nodes.emplace(*global_root, std::move(root));
    t.root = *global_root;
  }

  for (const auto& comp : comps) {
    const std::size_t r = *g.index_of(comp.front());
    std::optional<NodeId> comp_root;
    if (inc[r].empty()) {
      DecompositionNode single = classified_node(WeightedMultigraph({comp.front()}, {}), t.c);
      single.parent = global_root;
      comp_root = next++;
      t.nodes.emplace(*comp_root, std::move(single));
      if (!global_root) t.root = *comp_root;
      continue;
    }

    std::map<VertexId, std::size_t> home;
    const auto blocks = blocks_of(g, inc, r, home);
    std::optional<std::size_t> root_block;
    for (std::size_t b = blocks.size(); b-- > 0;) {
      if (blocks[b].attach == comp.front()) {
        root_block = b;
        break;
      }
    }
    home[comp.front()] = *root_block;

    // Per block: which node holds each of its vertices.
    std::vector<std::map<VertexId, NodeId>> holder(blocks.size());
    for (std::size_t bi = blocks.size(); bi-- > 0;) {
      const Block& block = blocks[bi];
      std::optional<NodeId> attach_parent;
      VertexSet attach_navel;
      if (bi != *root_block) {
        attach_parent = holder[home.at(block.attach)].at(block.attach);
        attach_navel = VertexSet{block.attach};
      } else {
        attach_parent = global_root;
      }

      std::vector<VertexId> local;
      for (std::size_t e : block.edges) {
        local.push_back(g.edges()[e].u);
        local.push_back(g.edges()[e].v);
      }
      std::sort(local.begin(), local.end());
      local.erase(std::unique(local.begin(), local.end()), local.end());
      auto idx = [&](VertexId v) {
        return static_cast<std::size_t>(std::lower_bound(local.begin(), local.end(), v) - local.begin());
      };
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t e : block.edges) pairs.emplace_back(idx(g.edges()[e].u), idx(g.edges()[e].v));
      const TriconnectedSplit split = triconnected_components(local.size(), pairs);

      const std::size_t real = block.edges.size();
      std::vector<std::vector<std::size_t>> owners(split.ends.size());
      std::vector<WeightedMultigraph> graphs;
      for (std::size_t ci = 0; ci < split.components.size(); ++ci) {
        std::vector<VertexId> vs;
        std::vector<Edge> es;
        for (std::size_t e : split.components[ci].edges) {
          const VertexId u = local[split.ends[e].first], v = local[split.ends[e].second];
          vs.push_back(u);
          vs.push_back(v);
          if (e < real) {
            es.push_back(g.edges()[block.edges[e]]);
          } else {
            es.push_back({u, v, 0});
            owners[e].push_back(ci);
          }
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        graphs.emplace_back(std::move(vs), std::move(es));
      }

      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tree_adj(graphs.size());
      for (std::size_t e = real; e < owners.size(); ++e) {
        if (owners[e].size() != 2) throw ConsistencyError("decompose_k33free: dangling virtual edge");
        tree_adj[owners[e][0]].emplace_back(owners[e][1], e);
        tree_adj[owners[e][1]].emplace_back(owners[e][0], e);
      }
      std::size_t top = 0;
      if (bi != *root_block) {
        for (std::size_t ci = 0; ci < graphs.size(); ++ci) {
          if (graphs[ci].has_vertex(block.attach)) {
            top = ci;
            break;
          }
        }
      }
      std::vector<NodeId> node_id(graphs.size());
      std::vector<bool> seen(graphs.size(), false);
      std::vector<std::size_t> order{top};
      seen[top] = true;
      std::vector<std::optional<std::size_t>> via(graphs.size());
      std::vector<std::size_t> up(graphs.size(), 0);
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& [other, e] : tree_adj[order[i]]) {
          if (seen[other]) continue;
          seen[other] = true;
          via[other] = e;
          up[other] = order[i];
          order.push_back(other);
        }
      }
      if (order.size() != graphs.size()) throw ConsistencyError("decompose_k33free: component tree is disconnected");
      for (std::size_t ci : order) {
        DecompositionNode node = classified_node(std::move(graphs[ci]), t.c);
        if (via[ci]) {
          node.parent = node_id[up[ci]];
          node.navel = VertexSet{local[split.ends[*via[ci]].first], local[split.ends[*via[ci]].second]};
        } else {
          node.parent = attach_parent;
          node.navel = attach_navel;
        }
        node_id[ci] = next++;
        for (VertexId v : node.graph.vertices()) holder[bi].emplace(v, node_id[ci]);
        if (!node.parent && !global_root) t.root = node_id[ci];
        t.nodes.emplace(node_id[ci], std::move(node));
      }
    }
  }
  if (t.nodes.empty()) {
    DecompositionNode root;
    root.embedding = test_planarity(root.graph);
    t.nodes.emplace(0, std::move(root));
    t.root = 0;
  }
  return t;
}

}  // namespace

DecompositionTree decompose_k33free(const WeightedMultigraph& g) {
  DecompositionTree out;
  run_with_large_stack([&] { out = decompose_impl(g); });
  return out;
}

}  // namespace pmcount
