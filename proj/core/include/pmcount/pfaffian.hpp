#pragma once

#include <cstddef>
#include <vector>

#include "pmcount/graph.hpp"
#include "pmcount/planarity.hpp"
#include "pmcount/rational.hpp"

namespace pmcount {

// Per-edge direction: forward[e] means edge e is oriented u -> v.
struct KasteleynOrientation {
  std::vector<bool> forward;
};

// Number of darts of a face walk whose direction agrees with the
// orientation. Face walks all run in one rotational sense, so "agrees with
// the walk" plays the role of "clockwise".
std::size_t clockwise_count(const FaceWalk& walk, const KasteleynOrientation& orientation);

// Every face except the outer one has an odd clockwise count.
bool is_kasteleyn(const PlaneEmbedding& emb, const KasteleynOrientation& orientation);

// Spanning tree plus dual-tree peeling. Requires a connected graph without
// parallel edges; throws PreconditionError otherwise.
KasteleynOrientation kasteleyn_orient(const WeightedMultigraph& g, const PlaneEmbedding& emb);

// Dense skew-symmetric matrix over the rationals.
class SkewMatrix {
 public:
  explicit SkewMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  // Sets (i, j) to x and (j, i) to -x.
  void set(std::size_t i, std::size_t j, const Rational& x);
  void add(std::size_t i, std::size_t j, const Rational& x);
  bool is_skew() const;

 private:
  friend Rational pfaffian_exact(SkewMatrix a);
  Rational& ref(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  std::size_t n_;
  std::vector<Rational> a_;
};

// Rows and columns follow g.vertices(). Entry (u, v) is +w(uv) when uv is
// oriented u -> v.
SkewMatrix oriented_matrix(const WeightedMultigraph& g, const KasteleynOrientation& orientation);

// Exact Pfaffian by skew-symmetric elimination with pivoting. Odd dimension
// gives 0. Throws PreconditionError on a non-skew input.
Rational pfaffian_exact(SkewMatrix a);

// Weighted perfect matching sum of a planar graph. Components are handled
// separately and multiplied. Throws NotPlanarError.
Rational perfmatch_planar(const WeightedMultigraph& g);

}  // namespace pmcount
