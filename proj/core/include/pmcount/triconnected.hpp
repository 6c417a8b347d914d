#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pmcount {

enum class ComponentKind { Bond, Polygon, Triconnected };

struct TriconnectedComponent {
  ComponentKind kind;
  // Indices into TriconnectedSplit::ends; indices >= the input edge count
  // are virtual edges, each shared by exactly two components.
  std::vector<std::size_t> edges;
};

struct TriconnectedSplit {
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<TriconnectedComponent> components;
};

// Triconnected components of a biconnected multigraph on vertices 0..n-1
// (maximal bonds and polygons already merged). Linear time; recursion depth
// grows with n, so large inputs need a large stack.
TriconnectedSplit triconnected_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace pmcount
