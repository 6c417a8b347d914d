#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pmcount/graph.hpp"

namespace pmcount {

// Directed edge-end: edge `edge` traversed from its u to its v (forward) or
// from v to u.
struct Dart {
  std::size_t edge;
  bool forward;

  friend bool operator==(const Dart&, const Dart&) = default;
};

using FaceWalk = std::vector<Dart>;

// Rotation system of a (multi)graph plus the face walks it induces.
//
// rotation[i] is the cyclic order of edge indices around the vertex at
// position i of graph.vertices(). The face following dart (u -> v) continues
// with the edge that succeeds it in the rotation at v, so all face walks of a
// component run in the same rotational sense and exactly one of them (per
// component) is the outer face.
struct PlaneEmbedding {
  std::vector<std::vector<std::size_t>> rotation;
  std::vector<FaceWalk> faces;
  std::size_t outer_face = 0;
};

// Face walks induced by a rotation system. Every dart of every edge appears
// in exactly one walk. Isolated vertices contribute no walk.
std::vector<FaceWalk> trace_faces(const WeightedMultigraph& g,
                                  const std::vector<std::vector<std::size_t>>& rotation);

// Builds an embedding from a rotation; the outer face is a longest walk.
PlaneEmbedding embedding_from_rotation(const WeightedMultigraph& g,
                                       std::vector<std::vector<std::size_t>> rotation);

// Checks that the rotation lists exactly the incident edges of every vertex
// and that each connected component with an edge satisfies
// n - m + f = 2 (so the total is n - m + f = 1 + #components once the outer
// faces are identified).
bool is_valid_embedding(const WeightedMultigraph& g, const PlaneEmbedding& emb);

// nullopt means not planar. Parallel edges are embedded next to each other.
std::optional<PlaneEmbedding> test_planarity(const WeightedMultigraph& g);

inline const std::vector<FaceWalk>& faces(const PlaneEmbedding& emb) { return emb.faces; }

// Tail and head of a dart.
std::pair<VertexId, VertexId> dart_ends(const WeightedMultigraph& g, const Dart& d);

// True iff some face walk is exactly the cycle through C. Sets of size <= 2
// always bound a face by convention. Throws PreconditionError when C does not
// induce a cycle.
bool cycle_bounds_face(const WeightedMultigraph& g, const PlaneEmbedding& emb, const VertexSet& c);

// True iff all externals that have an incident edge lie on one common face
// walk (isolated externals lie on every face).
bool on_common_face(const WeightedMultigraph& g, const PlaneEmbedding& emb,
                    std::span<const VertexId> externals, std::size_t* face_out = nullptr);

// Embedding restricted to a subset of edges (kept in the given order).
// Deleting edges from a plane graph leaves a plane graph.
std::pair<WeightedMultigraph, PlaneEmbedding> restrict_embedding(const WeightedMultigraph& g,
                                                                 const PlaneEmbedding& emb,
                                                                 std::span<const std::size_t> edges);

// Embedding of G - X obtained by dropping the deleted vertices.
std::pair<WeightedMultigraph, PlaneEmbedding> delete_vertices_embedded(const WeightedMultigraph& g,
                                                                       const PlaneEmbedding& emb,
                                                                       const VertexSet& x);

struct SplicePiece {
  const WeightedMultigraph* gadget;
  const PlaneEmbedding* gadget_embedding;
  VertexSet clique;
};

struct Spliced {
  WeightedMultigraph graph;
  PlaneEmbedding embedding;
};

// host (+)_K gadget for one or more gadgets. Each clique must have at most
// three vertices; a three-vertex clique must bound a face of the host's
// embedding and all externals must share a face of the gadget. Gadget
// vertices outside their clique must be disjoint from the host and from each
// other. The result is re-embedded from scratch.
Spliced splice_in_faces(const WeightedMultigraph& host, const PlaneEmbedding& host_embedding,
                        std::span<const SplicePiece> pieces);

Spliced splice_in_face(const WeightedMultigraph& host, const PlaneEmbedding& host_embedding,
                       const WeightedMultigraph& gadget, const PlaneEmbedding& gadget_embedding,
                       const VertexSet& clique);

}  // namespace pmcount
