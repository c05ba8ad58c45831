#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "plane_graph.hpp"

namespace listcrit {

/// Required list size per vertex. Values may be zero or negative after
/// residual computations; such a vertex can never be colored.
class SizeFunction {
 public:
  SizeFunction() = default;
  explicit SizeFunction(std::vector<int> values) : values_(std::move(values)) {}
  SizeFunction(std::initializer_list<int> values) : values_(values) {}
  SizeFunction(int n, int value) : values_(n, value) {}

  int size() const { return static_cast<int>(values_.size()); }
  int operator[](Vertex v) const { return values_[v]; }
  int& operator[](Vertex v) { return values_[v]; }
  const std::vector<int>& values() const { return values_; }

  SizeFunction restricted(std::span<const Vertex> keep) const {
    std::vector<int> out;
    out.reserve(keep.size());
    for (Vertex v : keep) out.push_back(values_[v]);
    return SizeFunction(std::move(out));
  }

  friend bool operator==(const SizeFunction&, const SizeFunction&) = default;

 private:
  std::vector<int> values_;
};

/// Induced subgraph on the kept vertices together with sizes reduced by the
/// number of removed neighbors. original[i] is the id in the source graph.
struct ResidualGraph {
  Graph graph;
  SizeFunction sizes;
  std::vector<Vertex> original;
};

inline ResidualGraph residual_sizes(const Graph& g, std::span<const Vertex> removed, const SizeFunction& s) {
  if (s.size() != g.order()) throw std::invalid_argument("residual_sizes: size function does not match graph");
  std::vector<char> gone(g.order(), 0);
  for (Vertex v : removed) gone[v] = 1;
  ResidualGraph out;
  std::vector<int> sizes;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (gone[v]) continue;
    int lost = 0;
    for (Vertex w : g.neighbors(v)) lost += gone[w];
    out.original.push_back(v);
    sizes.push_back(s[v] - lost);
  }
  out.graph = g.induced(out.original);
  out.sizes = SizeFunction(std::move(sizes));
  return out;
}

/// Orientation of every edge of a graph.
class Orientation {
 public:
  Orientation(Graph g, std::vector<Edge> arcs) : graph_(std::move(g)), arcs_(std::move(arcs)) {
    if (static_cast<int>(arcs_.size()) != graph_.size())
      throw std::invalid_argument("Orientation: arc count differs from edge count");
    out_.assign(graph_.order(), 0);
    std::vector<Edge> seen;
    for (auto [u, v] : arcs_) {
      if (!graph_.adjacent(u, v)) throw std::invalid_argument("Orientation: arc is not an edge");
      seen.emplace_back(std::min(u, v), std::max(u, v));
      ++out_[u];
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("Orientation: edge oriented twice");
  }

  const Graph& graph() const { return graph_; }
  const std::vector<Edge>& arcs() const { return arcs_; }
  int outdegree(Vertex v) const { return out_[v]; }

 private:
  Graph graph_;
  std::vector<Edge> arcs_;  // (tail, head)
  std::vector<int> out_;
};

namespace detail {

// Vertex order for frontier dynamic programs: BFS from each component root.
inline std::vector<int> bfs_positions(const Graph& g) {
  std::vector<int> pos(g.order(), -1);
  int next = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (pos[s] >= 0) continue;
    std::vector<Vertex> queue{s};
    pos[s] = next++;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex w : g.neighbors(queue[i]))
        if (pos[w] < 0) {
          pos[w] = next++;
          queue.push_back(w);
        }
  }
  return pos;
}

}  // namespace detail

/// (#even spanning Eulerian subdigraphs) - (#odd ones), counted exactly.
///
/// Arcs are swept in BFS order keeping the out-in balance of every vertex
/// that has both processed and unprocessed arcs; a vertex whose last arc
/// has been processed must have balance zero.
inline std::int64_t eulerian_parity_difference(const Orientation& o) {
  const Graph& g = o.graph();
  const int n = g.order();
  const auto pos = detail::bfs_positions(g);
  std::vector<Edge> arcs = o.arcs();
  std::sort(arcs.begin(), arcs.end(), [&](const Edge& a, const Edge& b) {
    auto ka = std::pair(std::max(pos[a.first], pos[a.second]), std::min(pos[a.first], pos[a.second]));
    auto kb = std::pair(std::max(pos[b.first], pos[b.second]), std::min(pos[b.first], pos[b.second]));
    return ka < kb;
  });
  std::vector<int> remaining(n, 0);
  for (auto [u, v] : arcs) {
    ++remaining[u];
    ++remaining[v];
  }
  std::vector<int> slot(n, -1);
  std::vector<int> free_slots;
  int slots = 0;
  using State = std::string;  // one signed balance byte per slot
  std::unordered_map<State, std::int64_t> cur{{State(), 1}};
  auto acquire = [&](Vertex v) {
    if (slot[v] >= 0) return;
    if (!free_slots.empty()) {
      slot[v] = free_slots.back();
      free_slots.pop_back();
    } else {
      slot[v] = slots++;
    }
  };
  for (auto [u, v] : arcs) {
    acquire(u);
    acquire(v);
    const auto su = static_cast<std::size_t>(slot[u]);
    const auto sv = static_cast<std::size_t>(slot[v]);
    const std::size_t width = static_cast<std::size_t>(slots);
    std::unordered_map<State, std::int64_t> next;
    next.reserve(cur.size() * 2);
    for (auto& [key, c] : cur) {
      State k = key;
      k.resize(width, 0);
      next[k] += c;  // arc not taken
      k[su] = static_cast<char>(k[su] + 1);
      k[sv] = static_cast<char>(k[sv] - 1);
      next[k] -= c;  // arc taken flips parity
    }
    for (Vertex x : {u, v}) {
      if (--remaining[x] > 0) continue;
      const auto sx = static_cast<std::size_t>(slot[x]);
      std::unordered_map<State, std::int64_t> kept;
      for (auto& [key, c] : next) {
        if (c == 0 || key[sx] != 0) continue;
        kept[key] += c;
      }
      next.swap(kept);
      free_slots.push_back(slot[x]);
      slot[x] = -1;
    }
    cur.swap(next);
  }
  std::int64_t total = 0;
  for (auto& [key, c] : cur) {
    bool zero = std::all_of(key.begin(), key.end(), [](char b) { return b == 0; });
    if (zero) total += c;
  }
  return total;
}

/// Orientation of g with the given outdegree sequence, if one exists.
inline std::optional<Orientation> orientation_with_outdegrees(const Graph& g, std::span<const int> target) {
  const int n = g.order();
  if (std::accumulate(target.begin(), target.end(), 0) != g.size()) return std::nullopt;
  // out[v] lists heads of arcs leaving v.
  std::vector<std::vector<Vertex>> out(n);
  for (auto [u, v] : g.edges()) out[u].push_back(v);
  auto excess = [&](Vertex v) { return static_cast<int>(out[v].size()) - target[v]; };
  for (;;) {
    Vertex src = -1;
    for (Vertex v = 0; v < n && src < 0; ++v)
      if (excess(v) > 0) src = v;
    if (src < 0) break;
    std::vector<Vertex> parent(n, -1);
    parent[src] = src;
    std::vector<Vertex> queue{src};
    Vertex sink = -1;
    for (std::size_t i = 0; i < queue.size() && sink < 0; ++i)
      for (Vertex w : out[queue[i]])
        if (parent[w] < 0) {
          parent[w] = queue[i];
          if (excess(w) < 0) {
            sink = w;
            break;
          }
          queue.push_back(w);
        }
    if (sink < 0) return std::nullopt;
    for (Vertex w = sink; w != src; w = parent[w]) {
      Vertex p = parent[w];
      out[p].erase(std::find(out[p].begin(), out[p].end(), w));
      out[w].push_back(p);
    }
  }
  std::vector<Edge> arcs;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : out[v]) arcs.emplace_back(v, w);
  return Orientation(g, std::move(arcs));
}

struct AlonTarsiOptions {
  /// Components of the peeled core with more edges are not examined; the
  /// answer is then inconclusive (false).
  int edge_cutoff = 25;
  /// Inconclusive once the search holds more partial outdegree vectors than
  /// this; 0 means no limit.
  std::size_t max_states = 0;
};

namespace detail {

// Signed orientation counts per outdegree vector within the caps, by branching
// on edges and merging equal partial outdegree vectors. Orienting edge (u, v),
// u < v, as u -> v counts +1, as v -> u counts -1. The magnitude of the total
// for an outdegree vector equals |EE - EO| of any orientation realizing it.
template <typename Key, typename Pack, typename Get>
std::optional<std::vector<int>> nonzero_outdegree_vector(const Graph& g, std::span<const int> cap,
                                                        std::span<const Edge> edges, Key zero, Pack add_one,
                                                        Get get, std::size_t max_states) {
  const int n = g.order();
  std::unordered_map<Key, std::int64_t, std::hash<Key>> cur{{zero, 1}};
  long long spare = 0;
  for (int c : cap) spare += c;
  std::vector<int> remaining_at(n, 0);
  for (auto [u, v] : edges) {
    ++remaining_at[u];
    ++remaining_at[v];
  }
  long long edges_left = static_cast<long long>(edges.size());
  for (auto [u, v] : edges) {
    --edges_left;
    --remaining_at[u];
    --remaining_at[v];
    std::unordered_map<Key, std::int64_t, std::hash<Key>> next;
    next.reserve(cur.size() * 2);
    for (auto& [key, c] : cur) {
      if (get(key, u) < cap[u]) next[add_one(key, u)] += c;
      if (get(key, v) < cap[v]) next[add_one(key, v)] -= c;
    }
    // Drop cancelled states and states that cannot absorb the remaining edges.
    for (auto it = next.begin(); it != next.end();) {
      bool drop = it->second == 0;
      if (!drop) {
        long long used = 0;
        for (Vertex x = 0; x < n; ++x) used += get(it->first, x);
        drop = spare - used < edges_left;
      }
      it = drop ? next.erase(it) : std::next(it);
    }
    cur.swap(next);
    if (cur.empty() || (max_states && cur.size() > max_states)) return std::nullopt;
  }
  for (auto& [key, c] : cur) {
    if (c == 0) continue;
    std::vector<int> t(n);
    for (Vertex x = 0; x < n; ++x) t[x] = get(key, x);
    return t;
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> alon_tarsi_component(const Graph& g, const SizeFunction& s,
                                                            std::size_t max_states = 0) {
  const int n = g.order();
  std::vector<int> cap(n);
  int bits = 0;
  std::vector<int> width(n), shift(n);
  for (Vertex v = 0; v < n; ++v) {
    cap[v] = std::min(s[v] - 1, g.degree(v));
    int w = 1;
    while ((1 << w) <= cap[v]) ++w;
    width[v] = w;
    shift[v] = bits;
    bits += w;
  }
  const auto pos = bfs_positions(g);
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    auto ka = std::pair(std::max(pos[a.first], pos[a.second]), std::min(pos[a.first], pos[a.second]));
    auto kb = std::pair(std::max(pos[b.first], pos[b.second]), std::min(pos[b.first], pos[b.second]));
    return ka < kb;
  });
  if (bits <= 64) {
    auto get = [&](std::uint64_t k, Vertex x) {
      return static_cast<int>((k >> shift[x]) & ((std::uint64_t{1} << width[x]) - 1));
    };
    auto add = [&](std::uint64_t k, Vertex x) { return k + (std::uint64_t{1} << shift[x]); };
    return nonzero_outdegree_vector<std::uint64_t>(g, cap, edges, std::uint64_t{0}, add, get, max_states);
  }
  auto get = [](const std::string& k, Vertex x) { return static_cast<int>(static_cast<unsigned char>(k[x])); };
  auto add = [](std::string k, Vertex x) {
    k[x] = static_cast<char>(k[x] + 1);
    return k;
  };
  return nonzero_outdegree_vector<std::string>(g, cap, edges, std::string(n, '\0'), add, get, max_states);
}

}  // namespace detail

/// Orientation with deg+(v) <= s(v) - 1 everywhere and a nonzero Eulerian
/// parity difference, if the search finds one within the edge cutoff.
/// Its existence proves g is s-colorable; absence is inconclusive.
inline std::optional<Orientation> alon_tarsi_witness(const Graph& g, const SizeFunction& s,
                                                     const AlonTarsiOptions& opt = {}) {
  const int n = g.order();
  if (s.size() != n) throw std::invalid_argument("alon_tarsi: size function does not match graph");
  for (Vertex v = 0; v < n; ++v)
    if (s[v] <= 0) return std::nullopt;

  // Peel vertices with fewer remaining neighbors than their size; their edges
  // leave them, which adds no Eulerian subgraph and respects every budget.
  std::vector<char> peeled(n, 0);
  std::vector<int> live_deg(n);
  for (Vertex v = 0; v < n; ++v) live_deg[v] = g.degree(v);
  std::vector<Edge> arcs;
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      if (peeled[v] || live_deg[v] >= s[v]) continue;
      peeled[v] = 1;
      changed = true;
      for (Vertex w : g.neighbors(v))
        if (!peeled[w]) {
          arcs.emplace_back(v, w);
          --live_deg[w];
        }
    }
  }
  std::vector<Vertex> core;
  for (Vertex v = 0; v < n; ++v)
    if (!peeled[v]) core.push_back(v);
  if (!core.empty()) {
    const Graph k = g.induced(core);
    const SizeFunction ks = s.restricted(core);
    long long budget = 0;
    for (Vertex v : core) budget += s[v] - 1;
    if (budget < k.size()) return std::nullopt;
    for (const auto& comp : k.components()) {
      const Graph c = k.induced(comp);
      if (c.size() > opt.edge_cutoff) return std::nullopt;
      const SizeFunction cs = ks.restricted(comp);
      auto t = detail::alon_tarsi_component(c, cs, opt.max_states);
      if (!t) return std::nullopt;
      auto o = orientation_with_outdegrees(c, *t);
      if (!o) throw std::logic_error("alon_tarsi: outdegree vector is not realizable");
      if (eulerian_parity_difference(*o) == 0)
        throw std::logic_error("alon_tarsi: coefficient and parity difference disagree");
      for (auto [a, b] : o->arcs()) arcs.emplace_back(core[comp[a]], core[comp[b]]);
    }
  }
  return Orientation(g, std::move(arcs));
}

inline bool alon_tarsi_certify(const Graph& g, const SizeFunction& s, const AlonTarsiOptions& opt = {}) {
  return alon_tarsi_witness(g, s, opt).has_value();
}

/// Greedy simulation of a coloring valid for every s-list assignment.
///
/// Lists are treated as truncated to exactly their current budget. Vertices
/// whose budget exceeds their number of uncolored active neighbors are set
/// aside and colored last. Otherwise the active vertex u with the smallest
/// budget is protected: a neighbor v with a larger budget is colored outside
/// L(u); else two nonadjacent neighbors v, w with b(v) + b(w) > b(u) are
/// colored so that u loses one color; else u itself is colored and every
/// active neighbor loses one color.
inline bool greedy_certify(const Graph& g, const SizeFunction& s) {
  const int n = g.order();
  if (s.size() != n) throw std::invalid_argument("greedy_certify: size function does not match graph");
  enum : char { kActive, kDeferred, kColored };
  std::vector<char> state(n, kActive);
  std::vector<int> b = s.values();
  auto active_degree = [&](Vertex v) {
    int d = 0;
    for (Vertex w : g.neighbors(v)) d += state[w] == kActive;
    return d;
  };
  auto color = [&](Vertex v, Vertex spared) {
    state[v] = kColored;
    for (Vertex x : g.neighbors(v))
      if (state[x] == kActive && x != spared) --b[x];
  };
  for (;;) {
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 0; v < n; ++v)
        if (state[v] == kActive && b[v] > active_degree(v)) {
          state[v] = kDeferred;
          changed = true;
        }
    }
    Vertex u = -1;
    for (Vertex v = 0; v < n; ++v)
      if (state[v] == kActive && (u < 0 || b[v] < b[u])) u = v;
    if (u < 0) return true;
    if (b[u] <= 0) return false;

    Vertex bigger = -1;
    for (Vertex v : g.neighbors(u))
      if (state[v] == kActive && b[v] > b[u] && (bigger < 0 || b[v] > b[bigger])) bigger = v;
    if (bigger >= 0) {
      color(bigger, u);
      continue;
    }

    Vertex pv = -1, pw = -1;
    const auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size() && pv < 0; ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const Vertex v = nb[i], w = nb[j];
        if (state[v] != kActive || state[w] != kActive || g.adjacent(v, w)) continue;
        if (b[v] >= 1 && b[w] >= 1 && b[v] + b[w] > b[u]) {
          pv = v;
          pw = w;
          break;
        }
      }
    if (pv >= 0) {
      color(pv, u);
      color(pw, u);
      --b[u];
      continue;
    }
    color(u, -1);
  }
}

/// Location of a known reducible configuration.
struct SpecialConfig {
  std::string name;
  std::vector<Vertex> vertices;  // center first, then rim/path in order
};

/// Searches for the 5-wheel with sizes (5; 3,3,2,2,2) and the fan
/// K = u + path(v,w,x,y) with sizes (4; 2,2,2,2) as induced subgraphs whose
/// residual sizes dominate the configuration's.
inline std::optional<SpecialConfig> find_special_config(const Graph& g, const SizeFunction& s) {
  const int n = g.order();
  if (s.size() != n) throw std::invalid_argument("find_special_config: size function does not match graph");
  // Residual size of a configuration vertex with `inner` neighbors inside it.
  auto res = [&](Vertex v, int inner) { return s[v] - (g.degree(v) - inner); };

  for (Vertex c = 0; c < n; ++c) {
    const auto nb = g.neighbors(c);
    if (nb.size() < 4) continue;
    // Induced paths/cycles inside N(c), built by DFS over ordered tuples.
    std::vector<Vertex> path;
    std::vector<char> in_path(n, 0);
    auto induced_ok = [&](Vertex w) {
      // w may touch only the last path vertex (and, for closing, the first).
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (g.adjacent(w, path[i])) return false;
      return true;
    };
    std::optional<SpecialConfig> found;
    auto dfs = [&](auto&& self) -> void {
      if (found) return;
      const std::size_t len = path.size();
      if (len == 4 && res(c, 4) >= 4) {
        // Fan: path v w x y, no chords, all in N(c).
        if (res(path[0], 2) >= 2 && res(path[1], 3) >= 2 && res(path[2], 3) >= 2 && res(path[3], 2) >= 2 &&
            !g.adjacent(path[0], path[3])) {
          found = SpecialConfig{"fan", {c, path[0], path[1], path[2], path[3]}};
          return;
        }
      }
      if (len == 5) {
        if (!g.adjacent(path[4], path[0]) || res(c, 5) < 5) return;
        for (std::size_t i = 0; i < 5; ++i) {
          bool ok = true;
          for (std::size_t j = 0; j < 5; ++j) {
            const int need = (j == i || j == (i + 1) % 5) ? 3 : 2;
            ok = ok && res(path[j], 3) >= need;
          }
          if (ok) {
            found = SpecialConfig{"wheel", {c, path[0], path[1], path[2], path[3], path[4]}};
            return;
          }
        }
        return;
      }
      for (Vertex w : nb) {
        if (in_path[w]) continue;
        if (!path.empty() && !g.adjacent(path.back(), w)) continue;
        if (len >= 1 && !induced_ok(w)) {
          // Allowed only as the closing vertex of the 5-cycle.
          if (len != 4) continue;
          bool ok = true;
          for (std::size_t i = 1; i + 1 < path.size(); ++i) ok = ok && !g.adjacent(w, path[i]);
          if (!ok) continue;
        }
        path.push_back(w);
        in_path[w] = 1;
        self(self);
        in_path[w] = 0;
        path.pop_back();
        if (found) return;
      }
    };
    dfs(dfs);
    if (found) return found;
  }
  return std::nullopt;
}

inline bool known_special_configs(const Graph& g, const SizeFunction& s) {
  return find_special_config(g, s).has_value();
}

enum class VerdictKind { ProvablyReducible, PossiblyCritical };

struct Verdict {
  VerdictKind kind = VerdictKind::PossiblyCritical;
  std::string witness;            // empty for PossiblyCritical
  std::vector<Vertex> certified;  // vertices of the certifying subgraph

  bool reducible() const { return kind == VerdictKind::ProvablyReducible; }
};

inline const char* to_string(VerdictKind k) {
  return k == VerdictKind::ProvablyReducible ? "ProvablyReducible" : "PossiblyCritical";
}

struct FilterOptions {
  AlonTarsiOptions alon_tarsi{};
  bool special_configs = true;
  bool greedy_precheck = true;
  /// Also try the greedy heuristic on every G_i before Alon-Tarsi.
  bool greedy_in_loop = true;
};

namespace detail {

inline std::string join_vertices(std::span<const Vertex> vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  return os.str();
}

}  // namespace detail

/// Searches for an induced subgraph of g that is colorable for its residual
/// sizes, which proves g is s-reducible.
inline Verdict reducibility_search(const Graph& g, const SizeFunction& s, const FilterOptions& opt = {}) {
  const int n = g.order();
  if (s.size() != n) throw std::invalid_argument("reducibility_search: size function does not match graph");
  if (n == 0) return {};
  if (opt.special_configs)
    if (auto cfg = find_special_config(g, s))
      return {VerdictKind::ProvablyReducible, "special:" + cfg->name + ":" + detail::join_vertices(cfg->vertices),
              cfg->vertices};
  if (opt.greedy_precheck && greedy_certify(g, s)) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {VerdictKind::ProvablyReducible, "greedy:" + detail::join_vertices(all), all};
  }

  std::vector<char> alive(n, 1);
  for (;;) {
    std::vector<Vertex> keep, removed;
    for (Vertex v = 0; v < n; ++v) (alive[v] ? keep : removed).push_back(v);
    if (keep.empty()) return {};
    ResidualGraph gi = residual_sizes(g, removed, s);
    if (opt.greedy_in_loop && keep.size() < static_cast<std::size_t>(n) && greedy_certify(gi.graph, gi.sizes))
      return {VerdictKind::ProvablyReducible, "greedy:" + detail::join_vertices(keep), keep};
    if (alon_tarsi_certify(gi.graph, gi.sizes, opt.alon_tarsi))
      return {VerdictKind::ProvablyReducible, "alon-tarsi:" + detail::join_vertices(keep), keep};

    // Shrink to B_i with the sizes of G_i held fixed.
    std::vector<char> in_b(gi.graph.order(), 1);
    for (Vertex v = gi.graph.order() - 1; v >= 0; --v) {
      in_b[v] = 0;
      std::vector<Vertex> rest;
      for (Vertex w = 0; w < gi.graph.order(); ++w)
        if (in_b[w]) rest.push_back(w);
      const bool still_negative =
          rest.empty() ? false : !alon_tarsi_certify(gi.graph.induced(rest), gi.sizes.restricted(rest), opt.alon_tarsi);
      if (!still_negative) in_b[v] = 1;
    }
    for (Vertex w = 0; w < gi.graph.order(); ++w)
      if (in_b[w]) alive[gi.original[w]] = 0;
  }
}

/// Vertices of g outside `boundary` with s(v) = base - (neighbors in boundary).
inline ResidualGraph boundary_residual(const Graph& g, std::span<const Vertex> boundary, int base) {
  return residual_sizes(g, boundary, SizeFunction(g.order(), base));
}

/// Conservative test whether g can be T-critical for some list assignment
/// with lists of size `base` outside T. ProvablyReducible means it cannot.
inline Verdict criticality_filter(const Graph& g, std::span<const Vertex> boundary, int boundary_edges, int base = 5,
                                  const FilterOptions& opt = {}) {
  if (base < 1) throw std::invalid_argument("criticality_filter: base must be positive");
  if (static_cast<int>(boundary.size()) == g.order() && boundary_edges == g.size())
    return {VerdictKind::ProvablyReducible, "trivial:G equals T", {}};
  ResidualGraph r = boundary_residual(g, boundary, base);
  Verdict v = reducibility_search(r.graph, r.sizes, opt);
  for (auto& x : v.certified) x = r.original[x];
  if (v.reducible()) {
    const auto colon = v.witness.rfind(':');
    v.witness = v.witness.substr(0, colon + 1) + detail::join_vertices(v.certified);
  }
  return v;
}

}  // namespace listcrit
