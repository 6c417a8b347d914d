#include "pmcount/matchgate.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

#include "pmcount/errors.hpp"
#include "pmcount/oracle.hpp"
#include "pmcount/pfaffian.hpp"

namespace pmcount {

namespace {

void require_distinct(const std::vector<VertexId>& ids, const char* what) {
  std::vector<VertexId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError(std::string(what) + ": external listed twice");
}

std::size_t position_of(const std::vector<VertexId>& ids, VertexId v) {
  auto it = std::find(ids.begin(), ids.end(), v);
  if (it == ids.end()) throw PreconditionError("vertex " + std::to_string(v) + " is not an external");
  return static_cast<std::size_t>(it - ids.begin());
}

bool same_set(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  return a.size() == b.size() && VertexSet(a) == VertexSet(b);
}

}  // namespace

Matchgate::Matchgate(WeightedMultigraph graph, std::vector<VertexId> externals)
    : graph_(std::move(graph)), externals_(std::move(externals)) {
  require_distinct(externals_, "matchgate");
  for (VertexId v : externals_) {
    if (!graph_.has_vertex(v))
      throw PreconditionError("matchgate: external " + std::to_string(v) + " is not in the graph");
  }
}

Signature::Signature(std::vector<VertexId> externals, std::vector<Rational> values)
    : externals_(std::move(externals)), values_(std::move(values)) {
  require_distinct(externals_, "signature");
  if (externals_.size() >= 32 || values_.size() != (std::size_t{1} << externals_.size()))
    throw PreconditionError("signature: expected 2^|S| values");
}

Signature::Signature(std::vector<VertexId> externals)
    : Signature(externals, std::vector<Rational>(std::size_t{1} << externals.size())) {}

std::size_t Signature::mask_of(const VertexSet& subset) const {
  std::size_t mask = 0;
  for (VertexId v : subset) mask |= std::size_t{1} << position_of(externals_, v);
  return mask;
}

const Rational& Signature::at(const VertexSet& subset) const { return values_[mask_of(subset)]; }

VertexSet Signature::subset_of(std::size_t mask) const {
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < externals_.size(); ++i) {
    if (mask >> i & 1) ids.push_back(externals_[i]);
  }
  return VertexSet(std::move(ids));
}

Signature Signature::reordered(const std::vector<VertexId>& order) const {
  if (!same_set(order, externals_)) throw PreconditionError("signature: reorder needs the same external set");
  std::vector<std::size_t> from(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) from[i] = position_of(externals_, order[i]);
  Signature out(order);
  for (std::size_t mask = 0; mask < values_.size(); ++mask) {
    std::size_t old = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (mask >> i & 1) old |= std::size_t{1} << from[i];
    }
    out.values_[mask] = values_[old];
  }
  return out;
}

PerfMatchEngine planar_engine() {
  return [](const WeightedMultigraph& g) { return perfmatch_planar(g); };
}

Signature signature_of(const Matchgate& gate, const PerfMatchEngine& engine) {
  Signature out(gate.externals());
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    out[mask] = engine(delete_vertices(gate.graph(), out.subset_of(mask)));
  }
  return out;
}

Parity parity_of(const Signature& f) {
  bool odd_nonzero = false;
  bool even_nonzero = false;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (sgn(f[mask]) == 0) continue;
    (std::popcount(mask) % 2 ? odd_nonzero : even_nonzero) = true;
  }
  if (!odd_nonzero) return Parity::Even;
  if (!even_nonzero) return Parity::Odd;
  return Parity::Neither;
}

Rational join_count(const Signature& f, const Signature& g) {
  if (!same_set(f.externals(), g.externals()))
    throw PreconditionError("join_count: signatures have different external sets");
  const Signature h = g.reordered(f.externals());
  const std::size_t full = f.size() - 1;
  Rational total = 0;
  for (std::size_t y = 0; y < f.size(); ++y) total += f[y] * h[full ^ y];
  return total;
}

Rational join_count(const Matchgate& a, const Matchgate& b, const PerfMatchEngine& engine) {
  return join_count(signature_of(a, engine), signature_of(b, engine));
}

Signature join_extend(const Signature& prev, const Signature& child) {
  const auto& v = prev.externals();
  const auto& k = child.externals();
  std::vector<std::size_t> bit(k.size());
  std::size_t kmask = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    auto it = std::find(v.begin(), v.end(), k[j]);
    if (it == v.end()) throw PreconditionError("join_extend: child external set is not contained in the parent's");
    bit[j] = static_cast<std::size_t>(it - v.begin());
    kmask |= std::size_t{1} << bit[j];
  }
  auto to_child = [&](std::size_t vmask) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (vmask >> bit[j] & 1) c |= std::size_t{1} << j;
    }
    return c;
  };

  Signature out(v);
  for (std::size_t x = 0; x < prev.size(); ++x) {
    const std::size_t free = kmask & ~x;
    Rational sum = 0;
    // Enumerate every Z subset of free, including the empty set.
    for (std::size_t z = free;; z = (z - 1) & free) {
      const Rational& p = prev[x | z];
      if (sgn(p) != 0) {
        const Rational& c = child[to_child(kmask & ~z)];
        if (sgn(c) != 0) sum += p * c;
      }
      if (z == 0) break;
    }
    out[x] = std::move(sum);
  }
  return out;
}

Signature restrict_signature(const Signature& f, const VertexSet& k) {
  std::vector<std::size_t> bit;
  for (VertexId id : k) {
    const auto& ext = f.externals();
    auto it = std::find(ext.begin(), ext.end(), id);
    if (it == ext.end()) throw PreconditionError("restrict_signature: K is not a subset of the externals");
    bit.push_back(static_cast<std::size_t>(it - ext.begin()));
  }
  Signature out(k.ids());
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < bit.size(); ++j) {
      if (mask >> j & 1) m |= std::size_t{1} << bit[j];
    }
    out[mask] = f[m];
  }
  return out;
}

Signature unit_signature(const std::vector<VertexId>& externals) {
  Signature out(externals);
  out[out.size() - 1] = 1;
  return out;
}

namespace {

// Plane matchgate on externals ext (|ext| <= 3) with an even signature g.
void build_even(WeightedMultigraph& gr, const std::vector<VertexId>& ext, const Signature& g,
                VertexId& next) {
  auto fresh = [&] {
    gr.add_vertex(next);
    return next++;
  };
  switch (ext.size()) {
    case 0: {
      const VertexId x = fresh(), y = fresh();
      gr.add_edge(x, y, g[0]);
      break;
    }
    case 1: {
      const VertexId x = fresh();
      gr.add_edge(ext[0], x, g[0]);
      break;
    }
    case 2: {
      const VertexId x = fresh(), y = fresh();
      gr.add_edge(ext[0], x, g[0]);
      gr.add_edge(x, y, g[3]);
      gr.add_edge(y, ext[1], 1);
      break;
    }
    case 3: {
      const VertexId a = ext[0], b = ext[1], c = ext[2];
      const Rational &ab = g[3], &ac = g[5], &bc = g[6];
      if (sgn(ab) != 0 || sgn(ac) != 0 || sgn(bc) != 0) {
        // K4 around a centre z. Removing the matched pair leaves the centre
        // paired with the third external; the empty set needs the triangle
        // edge opposite a nonzero spoke.
        const VertexId z = fresh();
        gr.add_edge(z, a, bc);
        gr.add_edge(z, b, ac);
        gr.add_edge(z, c, ab);
        Rational w_ab = 0, w_ac = 0, w_bc = 0;
        if (sgn(ab) != 0) {
          w_ab = g[0] / ab;
        } else if (sgn(ac) != 0) {
          w_ac = g[0] / ac;
        } else {
          w_bc = g[0] / bc;
        }
        gr.add_edge(a, b, w_ab);
        gr.add_edge(a, c, w_ac);
        gr.add_edge(b, c, w_bc);
      } else {
        const VertexId a2 = fresh(), b2 = fresh(), c2 = fresh();
        gr.add_edge(a, a2, g[0]);
        gr.add_edge(b, b2, 1);
        gr.add_edge(c, c2, 1);
        gr.add_edge(a, b, 0);
        gr.add_edge(b, c, 0);
      }
      break;
    }
    default:
      throw PreconditionError("realize_planar: more than three externals");
  }
}

}  // namespace

PlanarGadget realize_planar(const Signature& f, VertexId first_internal) {
  const auto& ext = f.externals();
  if (ext.size() > 3) throw PreconditionError("realize_planar: more than three externals");
  const Parity parity = parity_of(f);
  if (parity == Parity::Neither) throw PreconditionError("realize_planar: signature is neither even nor odd");
  for (VertexId v : ext) {
    if (v >= first_internal) throw PreconditionError("realize_planar: internal ids collide with externals");
  }

  WeightedMultigraph gr;
  for (VertexId v : ext) gr.add_vertex(v);
  VertexId next = first_internal;

  const bool all_zero = std::all_of(f.values().begin(), f.values().end(),
                                    [](const Rational& x) { return sgn(x) == 0; });
  if (all_zero) {
    gr.add_vertex(next++);
  } else if (parity == Parity::Even) {
    build_even(gr, ext, f, next);
  } else {
    // Pendant s0 -- s0*: deleting s0 exposes s0*, keeping s0 consumes it.
    const VertexId star = next++;
    gr.add_vertex(star);
    std::vector<VertexId> inner_ext = ext;
    inner_ext[0] = star;
    Signature g(inner_ext);
    for (std::size_t mask = 0; mask < g.size(); ++mask) g[mask] = f[mask ^ 1];
    build_even(gr, inner_ext, g, next);
    gr.add_edge(ext[0], star, 1);
  }

  // A temporary apex on the externals forces them onto one face.
  WeightedMultigraph probe = gr;
  const VertexId apex = next++;
  probe.add_vertex(apex);
  for (VertexId v : ext) probe.add_edge(v, apex, 0);
  const auto probe_emb = test_planarity(probe);
  if (!probe_emb) throw ConsistencyError("realize_planar: gadget is not planar with externals on one face");
  auto [plain, emb] = delete_vertices_embedded(probe, *probe_emb, VertexSet{apex});
  std::size_t face = 0;
  if (!on_common_face(plain, emb, ext, &face))
    throw ConsistencyError("realize_planar: externals do not share a face");
  emb.outer_face = face;

  Matchgate gate(std::move(plain), ext);
  if (gate.graph().vertex_count() > 10) throw ConsistencyError("realize_planar: gadget too large");
  if (!(brute_signature(gate) == f))
    throw ConsistencyError("realize_planar: gadget signature differs from the target " + format_signature(f));
  return PlanarGadget{std::move(gate), std::move(emb)};
}

std::string format_signature(const Signature& f) {
  const std::size_t k = f.arity();
  std::vector<std::size_t> masks(f.size());
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
  auto positions = [k](std::size_t mask) {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) p.push_back(i);
    }
    return p;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::size_t a, std::size_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return positions(a) < positions(b);
  });
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < k; ++i) out << (i ? " " : "") << f.externals()[i];
  out << ']';
  for (std::size_t m : masks) out << ' ' << to_string(f[m]);
  return out.str();
}

}  // namespace pmcount
