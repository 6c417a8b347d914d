#pragma once

#include <cstddef>
#include <cstdint>

#include "pmcount/decomposition.hpp"
#include "pmcount/graph.hpp"
#include "pmcount/matchgate.hpp"
#include "pmcount/rational.hpp"

namespace pmcount {

inline constexpr std::size_t kBruteForceVertexLimit = 40;

// Sum over all perfect matchings by branching on the lowest unmatched vertex
// (parallel edges enumerated one by one). Partial results are cached by the
// set of still-unmatched vertices. Throws PreconditionError above the limit.
Rational brute_perfmatch(const WeightedMultigraph& g, std::size_t vertex_limit = kBruteForceVertexLimit);

// Entrywise brute_perfmatch(G - X).
Signature brute_signature(const Matchgate& gate);

PerfMatchEngine brute_engine();

// Weights are p/q with p uniform in [lo, hi] and q uniform in [1, max_denominator].
struct WeightRange {
  int lo = -3;
  int hi = 3;
  int max_denominator = 1;
};

// Random planar graph on vertices 1..n: a stacked triangulation grown by
// inserting vertices into random faces, mixed by random edge flips, after
// which each edge survives with probability `density`. Deterministic in seed.
WeightedMultigraph gen_planar(std::size_t n, double density, const WeightRange& weights, std::uint64_t seed);

struct CliqueSumOptions {
  std::size_t pieces = 4;
  std::size_t min_piece_vertices = 3;
  std::size_t max_piece_vertices = 8;
  double k5_probability = 0.3;
  double piece_density = 0.85;
  // Stop adding pieces once another one could push the vertex count past this.
  std::size_t max_vertices = 0;
  WeightRange weights{};
};

struct CliqueSumInstance {
  WeightedMultigraph graph;
  DecompositionTree tree;
};

// Random planar pieces and K5 blocks glued by 0-, 1- and 2-clique sums. The
// graph is K3,3-minor-free by construction; `tree` is its ground-truth
// 5-nice decomposition. The shared edge of a 2-sum keeps its weight in the
// parent; the child copy gets a random weight (possibly zero), so the graph
// may have parallel edges. Vertices are 1..n.
CliqueSumInstance gen_cliquesum(const CliqueSumOptions& options, std::uint64_t seed);

// rows x cols grid with unit weights; vertex (r, c) is r * cols + c + 1.
WeightedMultigraph gen_grid(std::size_t rows, std::size_t cols);

}  // namespace pmcount
