#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pmcount/decomposition.hpp"
#include "pmcount/graph.hpp"
#include "pmcount/matchgate.hpp"
#include "pmcount/oracle.hpp"
#include "pmcount/rational.hpp"

namespace pmcount {

enum class Mode { Brute, Planar, K33, Decomp, Auto };

struct EngineOptions {
  // Nodes of one tree level are spread over this many threads.
  unsigned threads = 1;
  // When set, children of every node are visited in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t brute_limit = kBruteForceVertexLimit;
};

struct EngineStats {
  std::size_t nodes = 0;
  std::size_t small_nodes = 0;
  std::size_t planar_nodes = 0;
  std::size_t gadgets = 0;
  std::size_t max_gadget_vertices = 0;
  std::size_t planar_calls = 0;
  // Sum over planar nodes of n_t and n_t^1.5, n_t the vertex count after
  // gadget replacement.
  long double sum_n = 0;
  long double sum_n15 = 0;

  void merge(const EngineStats& other);
  bool work_bound_holds() const;
};

// Signature over the navel of node id, given the signatures of its children
// (each over that child's navel).
Signature process_node(const DecompositionTree& t, NodeId id,
                       const std::vector<std::pair<NodeId, Signature>>& children, EngineStats* stats = nullptr);

// Bottom-up evaluation; returns the root's single signature entry. Throws
// ConsistencyError if the work bound is violated.
Rational evaluate_decomposition(const DecompositionTree& t, const EngineOptions& options = {},
                                EngineStats* stats = nullptr);

// decomposition is required for Mode::Decomp and is validated against g
// first (InvalidDecompositionError). Auto tries planar, then K3,3-free.
Rational count_perfmatch(const WeightedMultigraph& g, Mode mode, const DecompositionTree* decomposition = nullptr,
                         const EngineOptions& options = {}, EngineStats* stats = nullptr);

}  // namespace pmcount
