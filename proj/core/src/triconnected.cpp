#include "pmcount/triconnected.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "pmcount/errors.hpp"

// Path-based split-pair search (Hopcroft and Tarjan) with the corrections
// of Gutwenger and Mutzel.

namespace pmcount {

namespace {

enum class EdgeType { Unseen, Tree, Frond, Removed };

using AdjList = std::list<std::size_t>;

class Splitter {
 public:
  Splitter(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : n_(n) {
    for (const auto& [u, v] : edges) new_edge(u, v);
    original_ = edges.size();
  }

  TriconnectedSplit run();

 private:
  struct Comp {
    std::vector<std::size_t> edges;
  };

  std::size_t new_edge(std::size_t u, std::size_t v) {
    src_.push_back(u);
    tgt_.push_back(v);
    type_.push_back(EdgeType::Unseen);
    in_adj_.emplace_back();
    in_high_.emplace_back();
    start_.push_back(false);
    return src_.size() - 1;
  }

  std::size_t new_comp() {
    comps_.emplace_back();
    return comps_.size() - 1;
  }

  void split_multi_edges();
  void dfs1(std::size_t v, std::optional<std::size_t> u);
  void build_acceptable_adj();
  void path_finder(std::size_t v);
  void dfs2();
  void path_search(std::size_t v);

  int high(std::size_t v) const { return highpt_[v].empty() ? 0 : highpt_[v].front(); }
  void del_high(std::size_t e) {
    if (in_high_[e]) {
      highpt_[in_high_[e]->first].erase(in_high_[e]->second);
      in_high_[e].reset();
    }
  }
  void tstack_push(int h, int a, int b) {
    ++top_;
    if (top_ >= ts_a_.size()) {
      ts_a_.resize(2 * top_ + 2);
      ts_b_.resize(2 * top_ + 2);
      ts_h_.resize(2 * top_ + 2);
    }
    ts_h_[top_] = h;
    ts_a_[top_] = a;
    ts_b_[top_] = b;
  }
  void tstack_push_eos() { tstack_push(0, -1, 0); }
  bool tstack_not_eos() const { return ts_a_[top_] != -1; }
  std::size_t estack_pop() {
    const std::size_t e = estack_.back();
    estack_.pop_back();
    return e;
  }

  std::size_t n_;
  std::size_t original_ = 0;
  std::vector<std::size_t> src_, tgt_;
  std::vector<EdgeType> type_;
  std::vector<AdjList::iterator> in_adj_;
  std::vector<std::optional<std::pair<std::size_t, std::list<int>::iterator>>> in_high_;
  std::vector<bool> start_;
  std::vector<Comp> comps_;

  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<int> number_, lowpt1_, lowpt2_, nd_, degree_;
  std::vector<std::optional<std::size_t>> father_;
  std::vector<std::size_t> tree_arc_;
  int num_count_ = 0;

  std::vector<AdjList> adj_;
  std::vector<int> newnum_;
  std::vector<std::list<int>> highpt_;
  std::vector<std::size_t> node_at_;
  bool new_path_ = false;

  std::vector<std::size_t> estack_;
  std::vector<int> ts_a_, ts_b_, ts_h_;
  std::size_t top_ = 0;
  std::size_t start_vertex_ = 0;
};

void Splitter::split_multi_edges() {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t e = 0; e < original_; ++e) groups[std::minmax(src_[e], tgt_[e])].push_back(e);
  for (const auto& [ends, group] : groups) {
    if (group.size() < 2) continue;
    const std::size_t c = new_comp();
    for (std::size_t e : group) {
      comps_[c].edges.push_back(e);
      type_[e] = EdgeType::Removed;
    }
    comps_[c].edges.push_back(new_edge(ends.first, ends.second));
  }
}

void Splitter::dfs1(std::size_t v, std::optional<std::size_t> u) {
  number_[v] = ++num_count_;
  father_[v] = u;
  degree_[v] = static_cast<int>(incidence_[v].size());
  lowpt1_[v] = lowpt2_[v] = number_[v];
  nd_[v] = 1;
  for (std::size_t e : incidence_[v]) {
    if (type_[e] != EdgeType::Unseen) continue;
    const std::size_t w = src_[e] == v ? tgt_[e] : src_[e];
    src_[e] = v;
    tgt_[e] = w;
    if (number_[w] == 0) {
      type_[e] = EdgeType::Tree;
      tree_arc_[w] = e;
      dfs1(w, v);
      if (lowpt1_[w] < lowpt1_[v]) {
        lowpt2_[v] = std::min(lowpt1_[v], lowpt2_[w]);
        lowpt1_[v] = lowpt1_[w];
      } else if (lowpt1_[w] == lowpt1_[v]) {
        lowpt2_[v] = std::min(lowpt2_[v], lowpt2_[w]);
      } else {
        lowpt2_[v] = std::min(lowpt2_[v], lowpt1_[w]);
      }
      nd_[v] += nd_[w];
    } else {
      type_[e] = EdgeType::Frond;
      if (number_[w] < lowpt1_[v]) {
        lowpt2_[v] = lowpt1_[v];
        lowpt1_[v] = number_[w];
      } else if (number_[w] > lowpt1_[v]) {
        lowpt2_[v] = std::min(lowpt2_[v], number_[w]);
      }
    }
  }
}

void Splitter::build_acceptable_adj() {
  const std::size_t max_phi = 3 * n_ + 2;
  std::vector<std::vector<std::size_t>> bucket(max_phi + 1);
  for (std::size_t e = 0; e < src_.size(); ++e) {
    const EdgeType t = type_[e];
    if (t != EdgeType::Tree && t != EdgeType::Frond) continue;
    const std::size_t v = src_[e], w = tgt_[e];
    int phi;
    if (t == EdgeType::Frond) {
      phi = 3 * number_[w] + 1;
    } else {
      phi = lowpt2_[w] < number_[v] ? 3 * lowpt1_[w] : 3 * lowpt1_[w] + 2;
    }
    bucket[static_cast<std::size_t>(phi)].push_back(e);
  }
  for (const auto& b : bucket) {
    for (std::size_t e : b) {
      auto& list = adj_[src_[e]];
      in_adj_[e] = list.insert(list.end(), e);
    }
  }
}

void Splitter::path_finder(std::size_t v) {
  newnum_[v] = num_count_ - nd_[v] + 1;
  for (std::size_t e : adj_[v]) {
    const std::size_t w = tgt_[e];
    if (new_path_) {
      new_path_ = false;
      start_[e] = true;
    }
    if (type_[e] == EdgeType::Tree) {
      path_finder(w);
      --num_count_;
    } else {
      auto& list = highpt_[w];
      in_high_[e] = std::make_pair(w, list.insert(list.end(), newnum_[v]));
      new_path_ = true;
    }
  }
}

void Splitter::dfs2() {
  newnum_.assign(n_, 0);
  highpt_.assign(n_, {});
  num_count_ = static_cast<int>(n_);
  new_path_ = true;
  path_finder(start_vertex_);
  std::vector<int> old2new(n_ + 1);
  for (std::size_t v = 0; v < n_; ++v) old2new[number_[v]] = newnum_[v];
  node_at_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) {
    node_at_[newnum_[v]] = v;
    lowpt1_[v] = old2new[lowpt1_[v]];
    lowpt2_[v] = old2new[lowpt2_[v]];
  }
  number_ = newnum_;
}

void Splitter::path_search(std::size_t v) {
  const int vnum = number_[v];
  AdjList& adj = adj_[v];
  int outv = static_cast<int>(adj.size());

  for (auto it = adj.begin(), next = it; it != adj.end(); it = next) {
    next = std::next(it);
    const std::size_t e = *it;
    std::size_t w = tgt_[e];
    int wnum = number_[w];
    auto at_it = [&](std::size_t edge) { return src_[edge] == v && in_adj_[edge] == it; };

    if (type_[e] == EdgeType::Tree) {
      if (start_[e]) {
        int y = 0, b = 0;
        if (ts_a_[top_] > lowpt1_[w]) {
          do {
            y = std::max(y, ts_h_[top_]);
            b = ts_b_[top_--];
          } while (ts_a_[top_] > lowpt1_[w]);
          tstack_push(y, lowpt1_[w], b);
        } else {
          tstack_push(wnum + nd_[w] - 1, lowpt1_[w], vnum);
        }
        tstack_push_eos();
      }

      path_search(w);
      estack_.push_back(tree_arc_[w]);

      std::size_t e_virt = 0;
      std::size_t x = 0;

      // Type-2 separation pairs.
      while (vnum != 1 &&
             (ts_a_[top_] == vnum ||
              (degree_[w] == 2 && !adj_[w].empty() && number_[tgt_[adj_[w].front()]] > wnum))) {
        const int a = ts_a_[top_];
        const int b = ts_b_[top_];
        if (a == vnum && father_[node_at_[b]] == node_at_[a]) {
          --top_;
          continue;
        }
        std::optional<std::size_t> e_ab;
        if (degree_[w] == 2 && !adj_[w].empty() && number_[tgt_[adj_[w].front()]] > wnum) {
          const std::size_t e1 = estack_pop();
          const std::size_t e2 = estack_pop();
          adj_[w].erase(in_adj_[e2]);
          x = tgt_[e2];
          e_virt = new_edge(v, x);
          --degree_[x];
          --degree_[v];
          const std::size_t c = new_comp();
          comps_[c].edges = {e1, e2, e_virt};
          if (!estack_.empty()) {
            const std::size_t top = estack_.back();
            if (src_[top] == x && tgt_[top] == v) {
              e_ab = estack_pop();
              adj_[x].erase(in_adj_[*e_ab]);
              del_high(*e_ab);
            }
          }
        } else {
          const int h = ts_h_[top_--];
          const std::size_t c = new_comp();
          while (!estack_.empty()) {
            const std::size_t xy = estack_.back();
            const std::size_t xs = src_[xy], xt = tgt_[xy];
            if (!(a <= number_[xs] && number_[xs] <= h && a <= number_[xt] && number_[xt] <= h)) break;
            if ((xs == node_at_[a] && xt == node_at_[b]) || (xt == node_at_[a] && xs == node_at_[b])) {
              e_ab = estack_pop();
              adj_[src_[*e_ab]].erase(in_adj_[*e_ab]);
              del_high(*e_ab);
            } else {
              const std::size_t eh = estack_pop();
              if (!at_it(eh)) {
                adj_[src_[eh]].erase(in_adj_[eh]);
                del_high(eh);
              }
              comps_[c].edges.push_back(eh);
              --degree_[xs];
              --degree_[xt];
            }
          }
          e_virt = new_edge(node_at_[a], node_at_[b]);
          comps_[c].edges.push_back(e_virt);
          x = node_at_[b];
        }

        if (e_ab) {
          const std::size_t c = new_comp();
          comps_[c].edges = {*e_ab, e_virt};
          e_virt = new_edge(v, x);
          comps_[c].edges.push_back(e_virt);
          --degree_[x];
          --degree_[v];
        }

        estack_.push_back(e_virt);
        *it = e_virt;
        in_adj_[e_virt] = it;
        ++degree_[x];
        ++degree_[v];
        father_[x] = v;
        tree_arc_[x] = e_virt;
        type_[e_virt] = EdgeType::Tree;
        w = x;
        wnum = number_[w];
      }

      // Type-1 separation pair.
      if (lowpt2_[w] >= vnum && lowpt1_[w] < vnum && (father_[v] != start_vertex_ || outv >= 2)) {
        const std::size_t c = new_comp();
        int xx = 0, y = 0;
        while (!estack_.empty()) {
          const std::size_t xy = estack_.back();
          xx = number_[src_[xy]];
          y = number_[tgt_[xy]];
          if (!((wnum <= xx && xx < wnum + nd_[w]) || (wnum <= y && y < wnum + nd_[w]))) break;
          comps_[c].edges.push_back(estack_pop());
          del_high(xy);
          --degree_[node_at_[xx]];
          --degree_[node_at_[y]];
        }
        const std::size_t low = node_at_[lowpt1_[w]];
        e_virt = new_edge(v, low);
        comps_[c].edges.push_back(e_virt);

        if ((xx == vnum && y == lowpt1_[w]) || (y == vnum && xx == lowpt1_[w])) {
          const std::size_t bond = new_comp();
          const std::size_t eh = estack_pop();
          if (!at_it(eh)) adj_[src_[eh]].erase(in_adj_[eh]);
          comps_[bond].edges = {eh, e_virt};
          e_virt = new_edge(v, low);
          comps_[bond].edges.push_back(e_virt);
          in_high_[e_virt] = in_high_[eh];
          in_high_[eh].reset();
          --degree_[v];
          --degree_[low];
        }

        if (father_[v] != low) {
          estack_.push_back(e_virt);
          *it = e_virt;
          in_adj_[e_virt] = it;
          if (!in_high_[e_virt] && high(low) < vnum) {
            highpt_[low].push_front(vnum);
            in_high_[e_virt] = std::make_pair(low, highpt_[low].begin());
          }
          ++degree_[v];
          ++degree_[low];
        } else {
          adj.erase(it);
          const std::size_t bond = new_comp();
          comps_[bond].edges.push_back(e_virt);
          const std::size_t eh = tree_arc_[v];
          comps_[bond].edges.push_back(eh);
          e_virt = new_edge(low, v);
          comps_[bond].edges.push_back(e_virt);
          type_[e_virt] = EdgeType::Tree;
          in_adj_[e_virt] = in_adj_[eh];
          *in_adj_[eh] = e_virt;
          tree_arc_[v] = e_virt;
        }
      }

      if (start_[e]) {
        while (tstack_not_eos()) --top_;
        --top_;
      }
      while (tstack_not_eos() && ts_b_[top_] != vnum && high(v) > ts_h_[top_]) --top_;
      --outv;
    } else {
      if (start_[e]) {
        int y = 0, b = 0;
        if (ts_a_[top_] > wnum) {
          do {
            y = std::max(y, ts_h_[top_]);
            b = ts_b_[top_--];
          } while (ts_a_[top_] > wnum);
          tstack_push(y, wnum, b);
        } else {
          tstack_push(vnum, wnum, vnum);
        }
      }
      estack_.push_back(e);
    }
  }
}

ComponentKind classify(const std::vector<std::size_t>& edges, const std::vector<std::size_t>& src,
                       const std::vector<std::size_t>& tgt) {
  std::map<std::size_t, int> deg;
  for (std::size_t e : edges) {
    ++deg[src[e]];
    ++deg[tgt[e]];
  }
  if (deg.size() == 2) return ComponentKind::Bond;
  const bool cycle = edges.size() == deg.size() &&
                     std::all_of(deg.begin(), deg.end(), [](const auto& p) { return p.second == 2; });
  return cycle ? ComponentKind::Polygon : ComponentKind::Triconnected;
}

TriconnectedSplit Splitter::run() {
  TriconnectedSplit out;
  if (n_ <= 2 || original_ <= 1) {
    std::vector<std::size_t> all(original_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t e = 0; e < original_; ++e) out.ends.emplace_back(src_[e], tgt_[e]);
    if (original_ > 0) out.components.push_back({ComponentKind::Bond, std::move(all)});
    return out;
  }

  split_multi_edges();

  incidence_.assign(n_, {});
  for (std::size_t e = 0; e < src_.size(); ++e) {
    if (type_[e] == EdgeType::Removed) continue;
    incidence_[src_[e]].push_back(e);
    incidence_[tgt_[e]].push_back(e);
  }
  number_.assign(n_, 0);
  lowpt1_.assign(n_, 0);
  lowpt2_.assign(n_, 0);
  nd_.assign(n_, 0);
  degree_.assign(n_, 0);
  father_.assign(n_, std::nullopt);
  tree_arc_.assign(n_, 0);
  num_count_ = 0;
  dfs1(start_vertex_, std::nullopt);
  if (num_count_ != static_cast<int>(n_)) throw PreconditionError("triconnected_components: graph is not connected");

  adj_.assign(n_, {});
  build_acceptable_adj();
  dfs2();

  ts_a_.assign(2 * src_.size() + 2, 0);
  ts_b_.assign(ts_a_.size(), 0);
  ts_h_.assign(ts_a_.size(), 0);
  top_ = 0;
  ts_a_[0] = -1;
  path_search(start_vertex_);

  if (!estack_.empty()) {
    const std::size_t c = new_comp();
    comps_[c].edges = estack_;
    estack_.clear();
  }

  // Merge bonds with bonds and polygons with polygons along shared virtual edges.
  const std::size_t total = src_.size();
  std::vector<std::vector<std::size_t>> owner(total);
  std::vector<ComponentKind> kind;
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    kind.push_back(classify(comps_[c].edges, src_, tgt_));
    for (std::size_t e : comps_[c].edges) owner[e].push_back(c);
  }
  std::vector<std::size_t> uf(comps_.size());
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<bool> dropped(total, false);
  for (std::size_t e = 0; e < total; ++e) {
    const bool is_virtual = e >= original_;
    if (is_virtual && owner[e].empty()) continue;
    if (!is_virtual && owner[e].size() != 1)
      throw ConsistencyError("triconnected_components: real edge not in exactly one component");
    if (!is_virtual) continue;
    if (owner[e].size() != 2)
      throw ConsistencyError("triconnected_components: virtual edge not in exactly two components");
    const std::size_t a = owner[e][0], b = owner[e][1];
    if (kind[a] == kind[b] && kind[a] != ComponentKind::Triconnected) {
      dropped[e] = true;
      uf[find(a)] = find(b);
    }
  }
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const std::size_t r = find(c);
    auto [it, fresh] = slot.emplace(r, out.components.size());
    if (fresh) out.components.push_back({kind[c], {}});
    for (std::size_t e : comps_[c].edges) {
      if (!dropped[e]) out.components[it->second].edges.push_back(e);
    }
  }

  // Renumber the surviving virtual edges densely after the real ones.
  std::vector<std::size_t> renum(total, total);
  for (std::size_t e = 0; e < original_; ++e) renum[e] = e;
  std::size_t next = original_;
  for (std::size_t e = original_; e < total; ++e) {
    if (!dropped[e] && !owner[e].empty()) renum[e] = next++;
  }
  out.ends.resize(next);
  for (std::size_t e = 0; e < total; ++e) {
    if (renum[e] != total) out.ends[renum[e]] = {src_[e], tgt_[e]};
  }
  for (auto& comp : out.components) {
    for (auto& e : comp.edges) e = renum[e];
    std::sort(comp.edges.begin(), comp.edges.end());
  }
  return out;
}

}  // namespace

TriconnectedSplit triconnected_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v) throw PreconditionError("triconnected_components: bad edge");
  }
  Splitter s(n, edges);
  return s.run();
}

}  // namespace pmcount
