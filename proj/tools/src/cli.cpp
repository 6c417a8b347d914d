#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pmcount/decomposition_io.hpp"
#include "pmcount/engine.hpp"
#include "pmcount/errors.hpp"
#include "pmcount/graph_io.hpp"
#include "pmcount/oracle.hpp"
#include "pmcount/pfaffian.hpp"

namespace pmcount::cli {

namespace {

struct CountArgs {
  std::string mode = "auto";
  std::string decomp;
  std::string graph;
  unsigned threads = 1;
  std::optional<std::uint64_t> shuffle_seed;
  bool stats = false;
};

struct DecomposeArgs {
  std::string target = "k33";
  std::string graph;
  std::string output;
};

struct ValidateArgs {
  std::string graph;
  std::string decomp;
};

struct OracleArgs {
  std::string graph;
  std::size_t limit = kBruteForceVertexLimit;
};

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 1;
  std::size_t n = 12;
  double density = 0.85;
  std::size_t rows = 4, cols = 4;
  std::size_t pieces = 4;
  std::size_t min_piece = 3, max_piece = 8;
  std::size_t max_vertices = 0;
  double k5 = 0.3;
  int wlo = -3, whi = 3, wden = 1;
  std::string output;
  std::string decomp_output;
};

struct BenchArgs {
  std::string mode = "k33";
  std::vector<std::size_t> sizes{1024, 2048, 4096};
  std::uint64_t seed = 1;
  std::size_t max_piece = 8;
  unsigned threads = 1;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

Mode parse_mode(const std::string& m) {
  if (m == "auto") return Mode::Auto;
  if (m == "planar") return Mode::Planar;
  if (m == "k33") return Mode::K33;
  if (m == "brute") return Mode::Brute;
  return Mode::Decomp;
}

int do_count(const CountArgs& a, std::ostream& out, std::ostream& err) {
  const WeightedMultigraph g = read_graph_file(a.graph);
  std::optional<DecompositionTree> t;
  if (!a.decomp.empty()) t = read_decomposition_file(a.decomp);
  Mode mode = parse_mode(a.mode);
  if (mode == Mode::Decomp && !t) throw PreconditionError("--mode decomp needs --decomp FILE");
  if (t && mode != Mode::Auto && mode != Mode::Decomp)
    throw PreconditionError("--decomp only combines with --mode auto or decomp");
  EngineOptions options;
  options.threads = std::max(1u, a.threads);
  options.shuffle_seed = a.shuffle_seed;
  EngineStats stats;
  const Rational value = count_perfmatch(g, mode, t ? &*t : nullptr, options, &stats);
  out << to_string(value) << '\n';
  if (a.stats) {
    err << "nodes " << stats.nodes << " small " << stats.small_nodes << " planar " << stats.planar_nodes
        << " gadgets " << stats.gadgets << " max_gadget_vertices " << stats.max_gadget_vertices << " sum_n "
        << static_cast<double>(stats.sum_n) << " sum_n^1.5 " << static_cast<double>(stats.sum_n15) << '\n';
  }
  return kOk;
}

int do_decompose(const DecomposeArgs& a, std::ostream& out) {
  const WeightedMultigraph g = read_graph_file(a.graph);
  const DecompositionTree t = decompose_k33free(g);
  emit(a.output, serialize_decomposition(t), out);
  return kOk;
}

int do_validate(const ValidateArgs& a, std::ostream& out) {
  const WeightedMultigraph g = read_graph_file(a.graph);
  const DecompositionTree t = read_decomposition_file(a.decomp);
  const auto violations = validate(t, g);
  if (violations.empty()) {
    out << "OK\n";
    return kOk;
  }
  for (const auto& v : violations) out << describe(v) << '\n';
  return kInvalidDecomposition;
}

int do_oracle(const OracleArgs& a, std::ostream& out) {
  const WeightedMultigraph g = read_graph_file(a.graph);
  out << to_string(brute_perfmatch(g, a.limit)) << '\n';
  return kOk;
}

int do_gen(const GenArgs& a, std::ostream& out) {
  const WeightRange w{a.wlo, a.whi, a.wden};
  if (a.kind == "planar") {
    emit(a.output, serialize_graph(gen_planar(a.n, a.density, w, a.seed)), out);
  } else if (a.kind == "grid") {
    emit(a.output, serialize_graph(gen_grid(a.rows, a.cols)), out);
  } else {
    CliqueSumOptions o;
    o.pieces = a.pieces;
    o.min_piece_vertices = a.min_piece;
    o.max_piece_vertices = a.max_piece;
    o.max_vertices = a.max_vertices;
    o.k5_probability = a.k5;
    o.piece_density = a.density;
    o.weights = w;
    const auto inst = gen_cliquesum(o, a.seed);
    emit(a.output, serialize_graph(inst.graph), out);
    if (!a.decomp_output.empty()) emit(a.decomp_output, serialize_decomposition(inst.tree), out);
  }
  return kOk;
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  out << std::left << std::setw(10) << "n" << std::setw(10) << "vertices" << std::setw(10) << "edges"
      << std::setw(10) << "nodes" << "seconds\n";
  std::vector<double> xs, ys;
  for (std::size_t n : a.sizes) {
    WeightedMultigraph g;
    if (a.mode == "planar") {
      g = gen_planar(n, 0.9, WeightRange{-3, 3, 1}, a.seed + n);
    } else {
      CliqueSumOptions o;
      o.pieces = 0;
      o.max_vertices = n;
      o.min_piece_vertices = 4;
      o.max_piece_vertices = a.max_piece;
      g = gen_cliquesum(o, a.seed + n).graph;
    }
    if (g.vertex_count() % 2 == 1) {
      const VertexId extra = g.max_vertex_id() + 1;
      g.add_vertex(extra);
      g.add_edge(g.vertices().front(), extra, 1);
    }
    EngineOptions options;
    options.threads = std::max(1u, a.threads);
    EngineStats stats;
    const auto start = std::chrono::steady_clock::now();
    count_perfmatch(g, a.mode == "planar" ? Mode::Planar : Mode::K33, nullptr, options, &stats);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << std::left << std::setw(10) << n << std::setw(10) << g.vertex_count() << std::setw(10) << g.edge_count()
        << std::setw(10) << stats.nodes << std::fixed << std::setprecision(3) << secs << '\n'
        << std::defaultfloat;
    xs.push_back(std::log(static_cast<double>(g.vertex_count())));
    ys.push_back(std::log(std::max(secs, 1e-6)));
  }
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    out << "fitted exponent " << std::fixed << std::setprecision(3) << slope << '\n' << std::defaultfloat;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact weighted perfect matching sums"};
  app.require_subcommand(1);

  CountArgs count;
  auto* c = app.add_subcommand("count", "Print PerfMatch(G) as an exact rational");
  c->add_option("--mode", count.mode)->check(CLI::IsMember({"auto", "planar", "k33", "brute", "decomp"}));
  c->add_option("--decomp", count.decomp, "Decomposition file");
  c->add_option("--threads", count.threads);
  c->add_option("--shuffle-seed", count.shuffle_seed, "Visit children in a seeded random order");
  c->add_flag("--stats", count.stats, "Print engine counters to stderr");
  c->add_option("graph", count.graph)->required();

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "Write a K3,3-free clique-sum decomposition");
  d->add_option("--target", dec.target)->check(CLI::IsMember({"k33"}));
  d->add_option("-o,--output", dec.output);
  d->add_option("graph", dec.graph)->required();

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check a decomposition against a graph");
  v->add_option("--graph", val.graph)->required();
  v->add_option("decomposition", val.decomp)->required();

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Brute-force PerfMatch(G)");
  o->add_option("--limit", orc.limit);
  o->add_option("graph", orc.graph)->required();

  GenArgs gen;
  auto* gsub = app.add_subcommand("gen", "Generate a random graph");
  gsub->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"planar", "k33sum", "grid"}));
  gsub->add_option("--seed", gen.seed);
  gsub->add_option("--n", gen.n);
  gsub->add_option("--density", gen.density);
  gsub->add_option("--rows", gen.rows);
  gsub->add_option("--cols", gen.cols);
  gsub->add_option("--pieces", gen.pieces);
  gsub->add_option("--min-piece", gen.min_piece);
  gsub->add_option("--max-piece", gen.max_piece);
  gsub->add_option("--max-vertices", gen.max_vertices);
  gsub->add_option("--k5-probability", gen.k5);
  gsub->add_option("--weight-lo", gen.wlo);
  gsub->add_option("--weight-hi", gen.whi);
  gsub->add_option("--max-denominator", gen.wden);
  gsub->add_option("-o,--output", gen.output);
  gsub->add_option("--decomp-output", gen.decomp_output, "Also write the ground-truth decomposition (k33sum)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time the engine over growing instances");
  b->add_option("--mode", bench.mode)->check(CLI::IsMember({"k33", "planar"}));
  b->add_option("--sizes", bench.sizes)->delimiter(',');
  b->add_option("--seed", bench.seed);
  b->add_option("--max-piece", bench.max_piece);
  b->add_option("--threads", bench.threads);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*c) return do_count(count, out, err);
    if (*d) return do_decompose(dec, out);
    if (*v) return do_validate(val, out);
    if (*o) return do_oracle(orc, out);
    if (*gsub) return do_gen(gen, out);
    if (*b) return do_bench(bench, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const NotPlanarError& e) {
    err << "not planar: " << e.what() << '\n';
    return kNotInClass;
  } catch (const NotInClassError& e) {
    err << "not in class: " << e.what() << '\n';
    return kNotInClass;
  } catch (const InvalidDecompositionError& e) {
    err << "invalid decomposition: " << e.what() << '\n';
    return kInvalidDecomposition;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kConsistency;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace pmcount::cli
