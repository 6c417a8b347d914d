#pragma once

#include <string>
#include <string_view>

#include "pmcount/decomposition.hpp"

namespace pmcount {

// JSON document:
//   {"c": int, "root": int, "nodes": [
//     {"id": int, "parent": int | null, "navel": [int...], "vertices": [int...],
//      "edges": [[u, v, "w"]...],
//      "embedding": {"rotation": {"<vertex id>": [edge index...]}} | null}]}
// Edge indices refer to the node's own edge list. Only syntax and shape are
// checked here; validate() does the semantic checks. Throws ParseError.
DecompositionTree parse_decomposition(std::string_view text);
DecompositionTree read_decomposition_file(const std::string& path);

std::string serialize_decomposition(const DecompositionTree& t);
void write_decomposition_file(const std::string& path, const DecompositionTree& t);

}  // namespace pmcount
