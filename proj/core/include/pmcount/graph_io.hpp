#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "pmcount/graph.hpp"

namespace pmcount {

// Line-oriented text format:
//
//   c <comment>
//   p pm <n> <m>
//   e <u> <v> <w>      (m lines; 1-based ids; w is "k" or "p/q", q > 0)
//
// Fields are separated by single spaces, with no trailing whitespace.
// Repeated e lines are parallel edges. Vertices are 1..n.
WeightedMultigraph parse_graph(std::string_view text);
WeightedMultigraph read_graph_file(const std::string& path);

// Requires the vertex set to be exactly {1..n}. Emits no comments.
std::string serialize_graph(const WeightedMultigraph& g);
void write_graph_file(const std::string& path, const WeightedMultigraph& g);

}  // namespace pmcount
