#include "pmcount/decomposition_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "pmcount/errors.hpp"
#include "pmcount/rational.hpp"

namespace pmcount {

namespace {

using Json = nlohmann::ordered_json;

// Position of a byte offset as 1-based line and column.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void shape_error(const std::string& where, const std::string& what) {
  throw ParseError(0, 0, where + ": " + what);
}

std::uint64_t as_id(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) shape_error(where, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  return v;
}

VertexId as_vertex(const Json& j, const std::string& where) {
  const auto v = as_id(j, where);
  if (v > 0xFFFFFFFFull) shape_error(where, "vertex id out of range");
  return static_cast<VertexId>(v);
}

const Json& field(const Json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) shape_error(where, std::string("missing field \"") + name + "\"");
  return *it;
}

DecompositionNode parse_node(const Json& j, const std::string& where, NodeId& id) {
  if (!j.is_object()) shape_error(where, "node must be an object");
  id = as_id(field(j, "id", where), where + ".id");
  DecompositionNode node;
  const Json& parent = field(j, "parent", where);
  if (!parent.is_null()) node.parent = as_id(parent, where + ".parent");

  const Json& navel = field(j, "navel", where);
  if (!navel.is_array()) shape_error(where + ".navel", "expected an array");
  std::vector<VertexId> navel_ids;
  for (const auto& v : navel) navel_ids.push_back(as_vertex(v, where + ".navel"));

  const Json& vertices = field(j, "vertices", where);
  if (!vertices.is_array()) shape_error(where + ".vertices", "expected an array");
  std::vector<VertexId> vs;
  for (const auto& v : vertices) vs.push_back(as_vertex(v, where + ".vertices"));

  const Json& edges = field(j, "edges", where);
  if (!edges.is_array()) shape_error(where + ".edges", "expected an array");
  std::vector<Edge> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = where + ".edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 3 || !e[2].is_string()) shape_error(at, "expected [u, v, \"weight\"]");
    Rational w;
    try {
      w = parse_rational(e[2].get<std::string>());
    } catch (const std::invalid_argument&) {
      shape_error(at, "bad weight \"" + e[2].get<std::string>() + "\"");
    }
    es.push_back({as_vertex(e[0], at), as_vertex(e[1], at), std::move(w)});
  }
  try {
    node.navel = VertexSet(std::move(navel_ids));
    node.graph = WeightedMultigraph(std::move(vs), std::move(es));
  } catch (const PreconditionError& e) {
    shape_error(where, e.what());
  }

  const Json& emb = field(j, "embedding", where);
  if (!emb.is_null()) {
    if (!emb.is_object()) shape_error(where + ".embedding", "expected an object or null");
    const Json& rot = field(emb, "rotation", where + ".embedding");
    if (!rot.is_object()) shape_error(where + ".embedding.rotation", "expected an object");
    const auto& g = node.graph;
    std::vector<std::vector<std::size_t>> rotation(g.vertex_count());
    for (const auto& [key, list] : rot.items()) {
      const std::string at = where + ".embedding.rotation[" + key + "]";
      std::uint64_t vid = 0;
      try {
        std::size_t used = 0;
        vid = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        shape_error(at, "key is not a vertex id");
      }
      auto pos = vid <= 0xFFFFFFFFull ? g.index_of(static_cast<VertexId>(vid)) : std::nullopt;
      if (!pos) shape_error(at, "unknown vertex");
      if (!list.is_array()) shape_error(at, "expected an array of edge indices");
      for (const auto& e : list) {
        const auto idx = as_id(e, at);
        if (idx >= g.edge_count()) shape_error(at, "edge index out of range");
        rotation[*pos].push_back(static_cast<std::size_t>(idx));
      }
    }
    // Each vertex must list exactly its incident edges.
    const auto inc = g.incidence();
    for (std::size_t i = 0; i < rotation.size(); ++i) {
      auto a = rotation[i], b = inc[i];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b)
        shape_error(where + ".embedding", "rotation at vertex " + std::to_string(g.vertices()[i]) +
                                              " does not list exactly its incident edges");
    }
    node.embedding = embedding_from_rotation(g, std::move(rotation));
  }
  return node;
}

}  // namespace

DecompositionTree parse_decomposition(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(line, column, "malformed JSON");
  }
  if (!doc.is_object()) shape_error("document", "expected an object");
  DecompositionTree t;
  const auto c = as_id(field(doc, "c", "document"), "c");
  if (c == 0) shape_error("c", "must be positive");
  t.c = static_cast<std::size_t>(c);
  t.root = as_id(field(doc, "root", "document"), "root");
  const Json& nodes = field(doc, "nodes", "document");
  if (!nodes.is_array()) shape_error("nodes", "expected an array");
  if (nodes.empty()) shape_error("nodes", "must not be empty");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeId id = 0;
    DecompositionNode node = parse_node(nodes[i], "nodes[" + std::to_string(i) + "]", id);
    if (!t.nodes.emplace(id, std::move(node)).second)
      shape_error("nodes[" + std::to_string(i) + "]", "duplicate node id " + std::to_string(id));
  }
  return t;
}

DecompositionTree read_decomposition_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_decomposition(buffer.str());
}

std::string serialize_decomposition(const DecompositionTree& t) {
  Json doc;
  doc["c"] = t.c;
  doc["root"] = t.root;
  Json nodes = Json::array();
  for (const auto& [id, node] : t.nodes) {
    Json j;
    j["id"] = id;
    j["parent"] = node.parent ? Json(*node.parent) : Json(nullptr);
    j["navel"] = node.navel.ids();
    j["vertices"] = node.graph.vertices();
    Json edges = Json::array();
    for (const auto& e : node.graph.edges()) edges.push_back(Json::array({e.u, e.v, to_string(e.weight)}));
    j["edges"] = std::move(edges);
    if (node.embedding) {
      Json rot = Json::object();
      for (std::size_t i = 0; i < node.graph.vertex_count(); ++i)
        rot[std::to_string(node.graph.vertices()[i])] = node.embedding->rotation[i];
      j["embedding"] = Json{{"rotation", std::move(rot)}};
    } else {
      j["embedding"] = nullptr;
    }
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(1) + "\n";
}

void write_decomposition_file(const std::string& path, const DecompositionTree& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << serialize_decomposition(t);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace pmcount
