#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pmcount/graph.hpp"
#include "pmcount/planarity.hpp"
#include "pmcount/rational.hpp"

namespace pmcount {

// A graph with an ordered list of external vertices.
class Matchgate {
 public:
  Matchgate() = default;
  // Throws PreconditionError if an external is missing from the graph or
  // listed twice.
  Matchgate(WeightedMultigraph graph, std::vector<VertexId> externals);

  const WeightedMultigraph& graph() const { return graph_; }
  const std::vector<VertexId>& externals() const { return externals_; }

 private:
  WeightedMultigraph graph_;
  std::vector<VertexId> externals_;
};

// Function from subsets of the externals to rationals. Subset X is stored at
// the index whose bit i is set iff externals[i] is in X.
class Signature {
 public:
  Signature() : values_(1) {}
  Signature(std::vector<VertexId> externals, std::vector<Rational> values);
  // All-zero signature over the given externals.
  explicit Signature(std::vector<VertexId> externals);

  const std::vector<VertexId>& externals() const { return externals_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t arity() const { return externals_.size(); }
  std::size_t size() const { return values_.size(); }

  const Rational& operator[](std::size_t mask) const { return values_[mask]; }
  Rational& operator[](std::size_t mask) { return values_[mask]; }
  const Rational& at(const VertexSet& subset) const;
  std::size_t mask_of(const VertexSet& subset) const;
  VertexSet subset_of(std::size_t mask) const;

  // Same function with the externals listed in a different order.
  Signature reordered(const std::vector<VertexId>& order) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<VertexId> externals_;
  std::vector<Rational> values_;
};

using PerfMatchEngine = std::function<Rational(const WeightedMultigraph&)>;

PerfMatchEngine planar_engine();

// values[X] = PerfMatch(G - X) for every subset X of the externals.
Signature signature_of(const Matchgate& gate, const PerfMatchEngine& engine);

enum class Parity { Even, Odd, Neither };

// The all-zero signature counts as even.
Parity parity_of(const Signature& f);

// PerfMatch of G (+)_S G2 from the two signatures alone. Both must have the
// same external set (in any order).
Rational join_count(const Signature& f, const Signature& g);
Rational join_count(const Matchgate& a, const Matchgate& b, const PerfMatchEngine& engine);

// Folds a child matchgate glued on K into a matchgate with externals V, K a
// subset of V:  out[X] = sum over Z in K \ X of prev[X u Z] * child[K \ Z].
Signature join_extend(const Signature& prev, const Signature& child);

// Restriction to the subsets of K (externals in K's sorted order).
Signature restrict_signature(const Signature& f, const VertexSet& k);

// Signature of the edgeless matchgate on K: 1 at X = K, zero elsewhere. It is
// the neutral element of join_extend.
Signature unit_signature(const std::vector<VertexId>& externals);

struct PlanarGadget {
  Matchgate gate;
  PlaneEmbedding embedding;
};

// Plane matchgate with at most 3 externals realizing an even or odd
// signature: at most 7 vertices, all externals on embedding.outer_face.
// Internal vertices are numbered first_internal, first_internal + 1, ...
// Every result is checked against its brute-force signature before being
// returned; a mismatch throws ConsistencyError. A Neither-parity input throws
// PreconditionError.
PlanarGadget realize_planar(const Signature& f, VertexId first_internal);

// Externals, then values with subsets grouped by size and ordered
// lexicographically by external position (0, a, b, c, ab, ac, bc, abc).
std::string format_signature(const Signature& f);

}  // namespace pmcount
