#include "pmcount/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>

#include "pmcount/errors.hpp"

namespace pmcount {

namespace {

struct Enumerator {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj;
  std::unordered_map<std::uint64_t, Rational> memo;

  // Sum over perfect matchings of the vertices in `open`.
  Rational solve(std::uint64_t open) {
    if (open == 0) return 1;
    if (auto it = memo.find(open); it != memo.end()) return it->second;
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(open));
    const std::uint64_t rest = open & ~(std::uint64_t{1} << i);
    Rational total = 0;
    for (const auto& [j, w] : adj[i]) {
      if (!(rest >> j & 1) || sgn(w) == 0) continue;
      total += w * solve(rest & ~(std::uint64_t{1} << j));
    }
    memo.emplace(open, total);
    return total;
  }
};

Rational random_weight(std::mt19937_64& rng, const WeightRange& range) {
  std::uniform_int_distribution<int> num(range.lo, range.hi);
  std::uniform_int_distribution<int> den(1, std::max(1, range.max_denominator));
  Rational w(num(rng), den(rng));
  w.canonicalize();
  return w;
}

using Tri = std::array<VertexId, 3>;
using Pair = std::pair<VertexId, VertexId>;

Pair key(VertexId a, VertexId b) { return a < b ? Pair{a, b} : Pair{b, a}; }

}  // namespace

Rational brute_perfmatch(const WeightedMultigraph& g, std::size_t vertex_limit) {
  const std::size_t n = g.vertex_count();
  if (n > vertex_limit || n > 64)
    throw PreconditionError("brute_perfmatch: " + std::to_string(n) + " vertices exceed the limit of " +
                            std::to_string(std::min<std::size_t>(vertex_limit, 64)));
  if (n % 2 == 1) return 0;
  Enumerator en;
  en.adj.resize(n);
  for (const auto& e : g.edges()) {
    const std::size_t i = *g.index_of(e.u), j = *g.index_of(e.v);
    en.adj[i].emplace_back(j, e.weight);
    en.adj[j].emplace_back(i, e.weight);
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return en.solve(all);
}

Signature brute_signature(const Matchgate& gate) {
  Signature out(gate.externals());
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    out[mask] = brute_perfmatch(delete_vertices(gate.graph(), out.subset_of(mask)));
  }
  return out;
}

PerfMatchEngine brute_engine() {
  return [](const WeightedMultigraph& g) { return brute_perfmatch(g); };
}

WeightedMultigraph gen_planar(std::size_t n, double density, const WeightRange& weights, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("gen_planar: need at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<Pair> edge_list;

  if (n == 2) {
    edge_list.push_back({1, 2});
  } else if (n >= 3) {
    std::vector<Tri> tris{{1, 2, 3}, {1, 3, 2}};
    std::map<Pair, std::vector<std::size_t>> faces_of;
    auto attach = [&](std::size_t f) {
      const Tri& t = tris[f];
      for (int i = 0; i < 3; ++i) faces_of[key(t[i], t[(i + 1) % 3])].push_back(f);
    };
    auto detach = [&](std::size_t f) {
      const Tri& t = tris[f];
      for (int i = 0; i < 3; ++i) {
        auto& v = faces_of[key(t[i], t[(i + 1) % 3])];
        v.erase(std::find(v.begin(), v.end(), f));
      }
    };
    attach(0);
    attach(1);
    for (VertexId v = 4; v <= n; ++v) {
      const std::size_t f = std::uniform_int_distribution<std::size_t>(0, tris.size() - 1)(rng);
      const Tri t = tris[f];
      detach(f);
      tris[f] = {t[0], t[1], v};
      attach(f);
      tris.push_back({t[1], t[2], v});
      attach(tris.size() - 1);
      tris.push_back({t[2], t[0], v});
      attach(tris.size() - 1);
    }
    for (std::size_t step = 0; step < 2 * n; ++step) {
      const std::size_t f = std::uniform_int_distribution<std::size_t>(0, tris.size() - 1)(rng);
      const int side = std::uniform_int_distribution<int>(0, 2)(rng);
      const VertexId a = tris[f][side], b = tris[f][(side + 1) % 3], c = tris[f][(side + 2) % 3];
      const auto& pair_faces = faces_of[key(a, b)];
      const std::size_t h = pair_faces[0] == f ? pair_faces[1] : pair_faces[0];
      VertexId d = 0;
      for (VertexId x : tris[h]) {
        if (x != a && x != b) d = x;
      }
      if (d == c) continue;
      if (auto it = faces_of.find(key(c, d)); it != faces_of.end() && !it->second.empty()) continue;
      detach(f);
      detach(h);
      tris[f] = {a, d, c};
      tris[h] = {b, c, d};
      attach(f);
      attach(h);
    }
    for (const auto& [p, fs] : faces_of) {
      if (!fs.empty()) edge_list.push_back(p);
    }
  }

  std::vector<VertexId> vertices(n);
  for (std::size_t i = 0; i < n; ++i) vertices[i] = static_cast<VertexId>(i + 1);
  std::bernoulli_distribution keep(std::clamp(density, 0.0, 1.0));
  std::vector<Edge> edges;
  for (const auto& [u, v] : edge_list) {
    if (!keep(rng)) continue;
    edges.push_back({u, v, random_weight(rng, weights)});
  }
  return WeightedMultigraph(std::move(vertices), std::move(edges));
}

CliqueSumInstance gen_cliquesum(const CliqueSumOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t lo = std::max<std::size_t>(1, options.min_piece_vertices);
  const std::size_t hi = std::max(lo, options.max_piece_vertices);
  DecompositionTree tree;
  tree.c = 5;
  tree.root = 0;
  VertexId next = 1;
  std::size_t total = 0;
  std::vector<NodeId> ids;

  for (std::size_t count = 0;; ++count) {
    if (options.pieces > 0 && count >= options.pieces) break;
    if (options.max_vertices > 0 && total + hi > options.max_vertices && count > 0) break;
    if (options.pieces == 0 && options.max_vertices == 0 && count > 0) break;

    // Local piece on ids 1..s.
    WeightedMultigraph piece;
    bool k5 = std::bernoulli_distribution(options.k5_probability)(rng);
    if (k5) {
      std::vector<Edge> edges;
      for (VertexId a = 1; a <= 5; ++a) {
        for (VertexId b = a + 1; b <= 5; ++b) edges.push_back({a, b, random_weight(rng, options.weights)});
      }
      piece = WeightedMultigraph({1, 2, 3, 4, 5}, std::move(edges));
    } else {
      const std::size_t s = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
      piece = gen_planar(s, options.piece_density, options.weights, rng());
    }

    // Gluing: the first piece is the root; later ones pick a parent node
    // and a 0-, 1- or 2-sum.
    std::map<VertexId, VertexId> relabel;
    DecompositionNode node;
    if (!ids.empty()) {
      const NodeId parent = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
      const auto& pg = tree.nodes[parent].graph;
      const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      int kind = r < 0.1 ? 0 : (r < 0.4 ? 1 : 2);
      if (kind == 2 && (pg.edge_count() == 0 || piece.edge_count() == 0)) kind = 1;
      if (kind == 1 && pg.vertex_count() == 0) kind = 0;
      if (kind == 1) {
        const VertexId pv = pg.vertices()[std::uniform_int_distribution<std::size_t>(0, pg.vertex_count() - 1)(rng)];
        const VertexId cv =
            piece.vertices()[std::uniform_int_distribution<std::size_t>(0, piece.vertex_count() - 1)(rng)];
        relabel[cv] = pv;
      } else if (kind == 2) {
        const Edge& pe = pg.edges()[std::uniform_int_distribution<std::size_t>(0, pg.edge_count() - 1)(rng)];
        const Edge& ce = piece.edges()[std::uniform_int_distribution<std::size_t>(0, piece.edge_count() - 1)(rng)];
        relabel[ce.u] = pe.u;
        relabel[ce.v] = pe.v;
      }
      node.parent = parent;
    }
    std::vector<VertexId> navel;
    for (const auto& [from, to] : relabel) navel.push_back(to);
    for (VertexId v : piece.vertices()) {
      if (!relabel.count(v)) {
        relabel[v] = next++;
        ++total;
      }
    }
    std::vector<VertexId> vertices;
    for (VertexId v : piece.vertices()) vertices.push_back(relabel[v]);
    std::vector<Edge> edges;
    for (const auto& e : piece.edges()) edges.push_back({relabel[e.u], relabel[e.v], e.weight});
    node.graph = WeightedMultigraph(std::move(vertices), std::move(edges));
    node.navel = VertexSet(std::move(navel));
    if (!k5) node.embedding = test_planarity(node.graph);

    const NodeId id = ids.size();
    tree.nodes.emplace(id, std::move(node));
    ids.push_back(id);
  }

  WeightedMultigraph g = compose(tree);
  return CliqueSumInstance{std::move(g), std::move(tree)};
}

WeightedMultigraph gen_grid(std::size_t rows, std::size_t cols) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c + 1); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      vertices.push_back(id(r, c));
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1});
    }
  }
  return WeightedMultigraph(std::move(vertices), std::move(edges));
}

}  // namespace pmcount
