#include "pmcount/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "pmcount/errors.hpp"
#include "pmcount/pfaffian.hpp"

namespace pmcount {

void EngineStats::merge(const EngineStats& other) {
  nodes += other.nodes;
  small_nodes += other.small_nodes;
  planar_nodes += other.planar_nodes;
  gadgets += other.gadgets;
  max_gadget_vertices = std::max(max_gadget_vertices, other.max_gadget_vertices);
  planar_calls += other.planar_calls;
  sum_n += other.sum_n;
  sum_n15 += other.sum_n15;
}

bool EngineStats::work_bound_holds() const {
  const long double bound = std::pow(sum_n, 1.5L);
  return sum_n15 <= bound * (1 + 1e-12L) + 1e-9L;
}

namespace {

void require_even_or_odd(const Signature& f, NodeId id) {
  if (parity_of(f) == Parity::Neither)
    throw ConsistencyError("signature at node " + std::to_string(id) + " is neither even nor odd");
}

}  // namespace

Signature process_node(const DecompositionTree& t, NodeId id,
                       const std::vector<std::pair<NodeId, Signature>>& children, EngineStats* stats) {
  const DecompositionNode& node = t.nodes.at(id);
  const WeightedMultigraph& g = node.graph;
  EngineStats local;
  local.nodes = 1;

  for (const auto& [cid, sig] : children) {
    if (!VertexSet(sig.externals()).is_subset_of(g.vertex_set()))
      throw InvalidDecompositionError("attachment clique of node " + std::to_string(cid) + " is not inside node " +
                                      std::to_string(id));
  }

  Signature result;
  if (g.vertex_count() <= t.c) {
    local.small_nodes = 1;
    Signature delta = brute_signature(Matchgate(g, g.vertices()));
    for (const auto& [cid, sig] : children) delta = join_extend(delta, sig);
    result = restrict_signature(delta, node.navel);
  } else {
    if (!node.embedding)
      throw InvalidDecompositionError("node " + std::to_string(id) + " has more than c vertices but no embedding");
    local.planar_nodes = 1;

    std::map<std::vector<VertexId>, Signature> groups;
    for (const auto& [cid, sig] : children) {
      const VertexSet k(sig.externals());
      if (k.size() > 3)
        throw InvalidDecompositionError("attachment clique of node " + std::to_string(cid) + " has more than 3 vertices");
      auto it = groups.find(k.ids());
      if (it == groups.end()) it = groups.emplace(k.ids(), unit_signature(k.ids())).first;
      it->second = join_extend(it->second, sig);
    }

    std::vector<PlanarGadget> gadgets;
    gadgets.reserve(groups.size());
    VertexId next = g.max_vertex_id() + 1;
    for (const auto& [k, sig] : groups) {
      if (parity_of(sig) == Parity::Neither)
        throw ConsistencyError("combined signature at node " + std::to_string(id) + " is neither even nor odd");
      gadgets.push_back(realize_planar(sig, next));
      const auto& gv = gadgets.back().gate.graph();
      next = std::max(next, gv.max_vertex_id() + 1);
      local.max_gadget_vertices = std::max(local.max_gadget_vertices, gv.vertex_count());
    }
    local.gadgets = gadgets.size();

    std::vector<SplicePiece> pieces;
    std::size_t i = 0;
    for (const auto& [k, sig] : groups) {
      pieces.push_back({&gadgets[i].gate.graph(), &gadgets[i].embedding, VertexSet(k)});
      ++i;
    }
    WeightedMultigraph psi;
    if (pieces.empty()) {
      psi = g;
    } else {
      try {
        psi = splice_in_faces(g, *node.embedding, pieces).graph;
      } catch (const PreconditionError& e) {
        throw InvalidDecompositionError("node " + std::to_string(id) + ": " + e.what());
      }
    }
    result = signature_of(Matchgate(psi, node.navel.ids()), planar_engine());
    local.planar_calls = result.size();
    const long double n = static_cast<long double>(psi.vertex_count());
    local.sum_n = n;
    local.sum_n15 = std::pow(n, 1.5L);
  }
  require_even_or_odd(result, id);
  if (stats) stats->merge(local);
  return result;
}

Rational evaluate_decomposition(const DecompositionTree& t, const EngineOptions& options, EngineStats* stats) {
  if (!t.nodes.count(t.root)) throw InvalidDecompositionError("root node is missing");
  const auto kids = t.children();

  std::vector<NodeId> order{t.root};
  std::map<NodeId, std::size_t> depth{{t.root, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (NodeId c : kids.at(order[i])) {
      depth[c] = depth[order[i]] + 1;
      order.push_back(c);
    }
  }
  if (order.size() != t.nodes.size()) throw InvalidDecompositionError("parent links do not form a tree");

  std::vector<std::vector<NodeId>> levels;
  for (NodeId id : order) {
    const std::size_t d = depth[id];
    if (levels.size() <= d) levels.resize(d + 1);
    levels[d].push_back(id);
  }

  std::map<NodeId, Signature> done;
  EngineStats total;
  std::mutex lock;

  auto work = [&](NodeId id, EngineStats& st) {
    std::vector<NodeId> cs = kids.at(id);
    if (options.shuffle_seed) {
      std::mt19937_64 rng(*options.shuffle_seed ^ (0x9e3779b97f4a7c15ull * (id + 1)));
      std::shuffle(cs.begin(), cs.end(), rng);
    }
    std::vector<std::pair<NodeId, Signature>> child_sigs;
    {
      std::lock_guard<std::mutex> guard(lock);
      for (NodeId c : cs) child_sigs.emplace_back(c, std::move(done.at(c)));
    }
    Signature sig = process_node(t, id, child_sigs, &st);
    std::lock_guard<std::mutex> guard(lock);
    done.emplace(id, std::move(sig));
    for (NodeId c : cs) done.erase(c);
  };

  for (std::size_t d = levels.size(); d-- > 0;) {
    const auto& level = levels[d];
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(level.size())));
    if (threads == 1) {
      for (NodeId id : level) work(id, total);
      continue;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<EngineStats> per(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = cursor++; i < level.size(); i = cursor++) work(level[i], per[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& s : per) total.merge(s);
  }

  if (!total.work_bound_holds()) throw ConsistencyError("planar work exceeds (sum n_t)^1.5");
  if (stats) stats->merge(total);
  const Signature& root = done.at(t.root);
  return root[0];
}

Rational count_perfmatch(const WeightedMultigraph& g, Mode mode, const DecompositionTree* decomposition,
                         const EngineOptions& options, EngineStats* stats) {
  if (mode == Mode::Auto && decomposition) mode = Mode::Decomp;
  if (mode == Mode::Decomp) {
    if (!decomposition) throw PreconditionError("decomposition mode needs a decomposition");
    const auto violations = validate(*decomposition, g);
    if (!violations.empty()) {
      std::string text = "invalid decomposition:";
      for (const auto& v : violations) text += "\n  " + describe(v);
      throw InvalidDecompositionError(text);
    }
    return evaluate_decomposition(*decomposition, options, stats);
  }
  if (g.vertex_count() % 2 == 1) return 0;
  switch (mode) {
    case Mode::Brute:
      return brute_perfmatch(g, options.brute_limit);
    case Mode::Planar:
      return perfmatch_planar(g);
    case Mode::K33:
      return evaluate_decomposition(decompose_k33free(g), options, stats);
    default:
      break;
  }
  if (test_planarity(merge_parallel(g))) return perfmatch_planar(g);
  try {
    return evaluate_decomposition(decompose_k33free(g), options, stats);
  } catch (const NotInClassError& e) {
    throw NotInClassError(std::string(e.what()) +
                          "; the graph is neither planar nor K3,3-minor-free, supply a decomposition file");
  }
}

}  // namespace pmcount
