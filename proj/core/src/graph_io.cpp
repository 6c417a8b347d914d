#include "pmcount/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pmcount/errors.hpp"

namespace pmcount {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ' ') {
      if (i == start) throw ParseError(line_no, i + 1, "empty field (double or trailing space)");
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::uint64_t parse_count(std::string_view field, std::size_t line_no, std::size_t column) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line_no, column, "expected a non-negative integer, got '" + std::string(field) + "'");
  return value;
}

}  // namespace

WeightedMultigraph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  WeightedMultigraph g;

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (line.empty()) throw ParseError(line_no, 1, "empty line");
    if (line.back() == '\r') throw ParseError(line_no, line.size(), "carriage return");
    if (line[0] == 'c') {
      if (line.size() > 1 && line[1] != ' ') throw ParseError(line_no, 2, "expected space after 'c'");
      continue;
    }
    auto fields = split_fields(line, line_no);
    if (fields[0] == "p") {
      if (have_header) throw ParseError(line_no, 1, "duplicate header");
      if (fields.size() != 4 || fields[1] != "pm")
        throw ParseError(line_no, 1, "header must be 'p pm <n> <m>'");
      n = parse_count(fields[2], line_no, 6);
      m = parse_count(fields[3], line_no, 7 + fields[2].size());
      if (n > 0xFFFFFFFFull) throw ParseError(line_no, 6, "too many vertices");
      std::vector<VertexId> vertices(n);
      for (std::uint64_t i = 0; i < n; ++i) vertices[i] = static_cast<VertexId>(i + 1);
      g = WeightedMultigraph(std::move(vertices), {});
      have_header = true;
    } else if (fields[0] == "e") {
      if (!have_header) throw ParseError(line_no, 1, "edge before header");
      if (fields.size() != 4) throw ParseError(line_no, 1, "edge line must be 'e <u> <v> <w>'");
      const auto u = parse_count(fields[1], line_no, 3);
      const auto v = parse_count(fields[2], line_no, 4 + fields[1].size());
      if (u < 1 || u > n || v < 1 || v > n)
        throw ParseError(line_no, 3, "vertex id out of range 1.." + std::to_string(n));
      if (u == v) throw ParseError(line_no, 3, "self-loop");
      Rational w;
      try {
        w = parse_rational(fields[3]);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, 5 + fields[1].size() + fields[2].size(), ex.what());
      }
      if (g.edge_count() == m) throw ParseError(line_no, 1, "more edge lines than declared");
      g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v), std::move(w));
    } else {
      throw ParseError(line_no, 1, "unknown line type '" + std::string(fields[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no + 1, 1, "missing 'p pm' header");
  if (g.edge_count() != m)
    throw ParseError(line_no + 1, 1,
                     "declared " + std::to_string(m) + " edges, found " + std::to_string(g.edge_count()));
  return g;
}

WeightedMultigraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const WeightedMultigraph& g) {
  const auto n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (g.vertices()[i] != i + 1)
      throw PreconditionError("serialize_graph: vertex ids must be exactly 1..n");
  }
  std::ostringstream out;
  out << "p pm " << n << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << to_string(e.weight) << '\n';
  return out.str();
}

void write_graph_file(const std::string& path, const WeightedMultigraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_graph(g);
}

}  // namespace pmcount
