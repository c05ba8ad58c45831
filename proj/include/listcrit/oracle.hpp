#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "colorability.hpp"
#include "graph.hpp"

namespace listcrit {

/// Colors per vertex; colors are small nonnegative integers.
using ListAssignment = std::vector<std::vector<int>>;

inline constexpr int kOracleMaxVertices = 20;
inline constexpr int kOracleMaxFree = 9;

namespace detail {

// Backtracking with most-constrained-vertex selection. `color` holds fixed
// colors (or -1); returns true and fills `color` on success.
inline bool extend_coloring(const Graph& g, const ListAssignment& lists, std::vector<int>& color) {
  const int n = g.order();
  Vertex pick = -1;
  int pick_options = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (color[v] >= 0) continue;
    int options = 0;
    for (int c : lists[v]) {
      bool free = true;
      for (Vertex w : g.neighbors(v)) free = free && color[w] != c;
      options += free;
    }
    if (pick < 0 || options < pick_options) {
      pick = v;
      pick_options = options;
    }
    if (options == 0) return false;
  }
  if (pick < 0) return true;
  for (int c : lists[pick]) {
    bool free = true;
    for (Vertex w : g.neighbors(pick)) free = free && color[w] != c;
    if (!free) continue;
    color[pick] = c;
    if (extend_coloring(g, lists, color)) return true;
  }
  color[pick] = -1;
  return false;
}

}  // namespace detail

/// Exact L-colorability by backtracking. Refuses graphs above the guard.
inline bool oracle_exact_colorable(const Graph& g, const ListAssignment& lists) {
  if (g.order() > kOracleMaxVertices) throw std::length_error("oracle_exact_colorable: graph exceeds oracle guard");
  if (static_cast<int>(lists.size()) != g.order())
    throw std::invalid_argument("oracle_exact_colorable: list assignment does not match graph");
  std::vector<int> color(g.order(), -1);
  return detail::extend_coloring(g, lists, color);
}

namespace detail {

using ColorMask = std::uint64_t;

// Colorability of the vertices in `alive` from residual lists, by
// backtracking on the vertex with fewest remaining colors.
inline bool masks_colorable(std::span<const ColorMask> lists, std::span<const std::uint32_t> adj, std::uint32_t alive,
                            std::vector<int>& color) {
  int pick = -1;
  ColorMask pick_avail = 0;
  int pick_count = 65;
  for (std::uint32_t rest = alive; rest; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    if (color[v] >= 0) continue;
    ColorMask avail = lists[v];
    for (std::uint32_t nb = adj[v] & alive; nb; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      if (color[w] >= 0) avail &= ~(ColorMask{1} << color[w]);
    }
    const int count = std::popcount(avail);
    if (count == 0) return false;
    if (count < pick_count) {
      pick = v;
      pick_avail = avail;
      pick_count = count;
    }
  }
  if (pick < 0) return true;
  for (ColorMask rest = pick_avail; rest; rest &= rest - 1) {
    color[pick] = std::countr_zero(rest);
    if (masks_colorable(lists, adj, alive, color)) {
      color[pick] = -1;
      return true;
    }
  }
  color[pick] = -1;
  return false;
}

// True if repeatedly removing a vertex whose size exceeds its remaining
// degree empties the graph; then every list assignment of these sizes works.
inline bool degenerate_colorable(std::span<const int> sizes, std::span<const std::uint32_t> adj, std::uint32_t alive) {
  bool progress = true;
  while (alive && progress) {
    progress = false;
    for (std::uint32_t rest = alive; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (sizes[v] > std::popcount(adj[v] & alive)) {
        alive &= ~(std::uint32_t{1} << v);
        progress = true;
      }
    }
  }
  return alive == 0;
}

}  // namespace detail

/// Whether some s-list assignment from colors {0..palette-1} makes g
/// T-critical: for every maximal proper subgraph containing T some coloring
/// of T extends to it but not to g. T vertices may take any color at all.
///
/// T is given by its vertices and edges. Edges of g between T vertices that
/// are not edges of T are deletable like any other edge.
inline bool oracle_exact_critical(const Graph& g, std::span<const Vertex> t_vertices, std::span<const Edge> t_edges,
                                  const SizeFunction& s, int palette) {
  using detail::ColorMask;
  const int n = g.order();
  if (n > kOracleMaxVertices) throw std::length_error("oracle_exact_critical: graph exceeds oracle guard");
  if (palette < 1 || palette > 64) throw std::invalid_argument("oracle_exact_critical: palette must be 1..64");
  std::vector<char> in_t(n, 0);
  for (Vertex v : t_vertices) in_t[v] = 1;
  std::vector<Vertex> free;
  std::vector<int> index(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (!in_t[v]) {
      index[v] = static_cast<int>(free.size());
      free.push_back(v);
    }
  const int nf = static_cast<int>(free.size());
  if (nf > kOracleMaxFree) throw std::length_error("oracle_exact_critical: too many vertices outside T");
  auto norm = [](Edge e) { return Edge{std::min(e.first, e.second), std::max(e.first, e.second)}; };
  std::vector<Edge> t_edge_set;
  for (Edge e : t_edges) t_edge_set.push_back(norm(e));
  std::sort(t_edge_set.begin(), t_edge_set.end());
  for (Edge e : t_edge_set)
    if (!g.adjacent(e.first, e.second)) throw std::invalid_argument("oracle_exact_critical: T is not a subgraph");
  auto in_t_edges = [&](Edge e) { return std::binary_search(t_edge_set.begin(), t_edge_set.end(), norm(e)); };

  // Deletable items: T-free edges, free-free edges, T-T chords, isolated
  // free vertices.
  enum class Kind { TFree, FreeFree, Chord, Isolated };
  struct Deletion {
    Kind kind;
    int a, b;  // T vertex / free index / free index, as the kind requires
  };
  std::vector<Deletion> deletions;
  std::vector<Edge> chords;
  std::vector<std::uint32_t> fadj(nf, 0);
  std::vector<std::vector<Vertex>> t_nbrs(nf);
  for (auto [u, v] : g.edges()) {
    if (in_t[u] && in_t[v]) {
      if (!in_t_edges({u, v})) {
        deletions.push_back({Kind::Chord, static_cast<int>(chords.size()), 0});
        chords.push_back({u, v});
      }
    } else if (in_t[u] || in_t[v]) {
      const Vertex t = in_t[u] ? u : v;
      const int f = index[in_t[u] ? v : u];
      t_nbrs[f].push_back(t);
      deletions.push_back({Kind::TFree, t, f});
    } else {
      fadj[index[u]] |= std::uint32_t{1} << index[v];
      fadj[index[v]] |= std::uint32_t{1} << index[u];
      deletions.push_back({Kind::FreeFree, index[u], index[v]});
    }
  }
  for (int f = 0; f < nf; ++f)
    if (g.degree(free[f]) == 0) deletions.push_back({Kind::Isolated, f, 0});
  if (deletions.empty()) return false;
  for (Vertex v : free)
    if (s[v] > palette) return false;

  const std::uint32_t all_free = nf == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << nf) - 1;
  std::vector<ColorMask> lists(nf, 0);
  std::vector<int> scratch(nf, -1);

  // T vertices that can matter: neighbors of free vertices and chord ends.
  std::vector<char> chord_end(n, 0), touches_free(n, 0);
  for (auto [u, v] : chords) chord_end[u] = chord_end[v] = 1;
  for (int f = 0; f < nf; ++f)
    for (Vertex t : t_nbrs[f]) touches_free[t] = 1;
  std::vector<Vertex> tv;
  for (Vertex v : t_vertices)
    if (chord_end[v]) tv.push_back(v);
  for (Vertex v : t_vertices)
    if (!chord_end[v] && touches_free[v]) tv.push_back(v);
  std::vector<std::vector<int>> pending_of(n);  // free vertices with t as T-neighbor
  for (int f = 0; f < nf; ++f)
    for (Vertex t : t_nbrs[f]) pending_of[t].push_back(f);

  // Colorings of T up to renaming. A T vertex only matters through the
  // lists of its free neighbors, so any other color acts like a fresh one
  // of its own; endpoints of deletable T-T edges may also share colors.
  auto critical_for_lists = [&]() {
    std::vector<char> witnessed(deletions.size(), 0);
    std::size_t open = deletions.size();
    std::vector<int> psi(n, -1);
    std::vector<std::vector<int>> options(n);
    for (Vertex v : tv) {
      ColorMask seen = 0;
      for (int f = 0; f < nf; ++f)
        if (chord_end[v] || std::find(t_nbrs[f].begin(), t_nbrs[f].end(), v) != t_nbrs[f].end()) seen |= lists[f];
      for (ColorMask rest = seen; rest; rest &= rest - 1) options[v].push_back(std::countr_zero(rest));
    }
    std::vector<int> unassigned(nf);
    for (int f = 0; f < nf; ++f) unassigned[f] = static_cast<int>(t_nbrs[f].size());
    auto bit = [&](int c) { return c < palette ? ColorMask{1} << c : ColorMask{0}; };
    auto forbidden = [&](int f, Vertex skip) {
      ColorMask m = 0;
      for (Vertex t : t_nbrs[f])
        if (t != skip && psi[t] >= 0) m |= bit(psi[t]);
      return m;
    };
    auto t_conflict = [&](Vertex v) {
      for (Vertex w : g.neighbors(v))
        if (in_t[w] && psi[w] == psi[v] && in_t_edges({v, w})) return true;
      return false;
    };

    std::vector<ColorMask> residual(nf), changed(nf);
    std::vector<int> sizes(nf);
    auto leaf = [&]() {
      int bad_chords = 0;
      int bad_chord = -1;
      for (std::size_t c = 0; c < chords.size(); ++c)
        if (psi[chords[c].first] == psi[chords[c].second]) {
          ++bad_chords;
          bad_chord = static_cast<int>(c);
        }
      for (int f = 0; f < nf; ++f) residual[f] = lists[f] & ~forbidden(f, -1);
      if (bad_chords == 0 && detail::masks_colorable(residual, fadj, all_free, scratch)) return false;
      for (std::size_t j = 0; j < deletions.size(); ++j) {
        if (witnessed[j]) continue;
        const auto& d = deletions[j];
        bool ext = false;
        switch (d.kind) {
          case Kind::TFree:
            if (bad_chords == 0) {
              changed = residual;
              changed[d.b] = lists[d.b] & ~forbidden(d.b, d.a);
              ext = detail::masks_colorable(changed, fadj, all_free, scratch);
            }
            break;
          case Kind::FreeFree:
            if (bad_chords == 0) {
              auto adj = fadj;
              adj[d.a] &= ~(std::uint32_t{1} << d.b);
              adj[d.b] &= ~(std::uint32_t{1} << d.a);
              ext = detail::masks_colorable(residual, adj, all_free, scratch);
            }
            break;
          case Kind::Chord:
            if (bad_chords == 0 || (bad_chords == 1 && bad_chord == d.a))
              ext = detail::masks_colorable(residual, fadj, all_free, scratch);
            break;
          case Kind::Isolated:
            if (bad_chords == 0)
              ext = detail::masks_colorable(residual, fadj, all_free & ~(std::uint32_t{1} << d.a), scratch);
            break;
        }
        if (ext) {
          witnessed[j] = 1;
          --open;
        }
      }
      return open == 0;
    };

    // With no chords, G extends every completion once the free part stays
    // degenerate-colorable even if each unassigned T neighbor removes a color.
    auto hopeless = [&]() {
      if (!chords.empty()) return false;
      for (int f = 0; f < nf; ++f) sizes[f] = std::popcount(lists[f] & ~forbidden(f, -1)) - unassigned[f];
      return detail::degenerate_colorable(sizes, fadj, all_free);
    };

    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int fresh_used) -> bool {
      if (i == tv.size()) return leaf();
      if (hopeless()) return false;
      const Vertex v = tv[i];
      auto attempt = [&](int c, int next_fresh) {
        psi[v] = c;
        for (int f : pending_of[v]) --unassigned[f];
        const bool done = !t_conflict(v) && rec(i + 1, next_fresh);
        for (int f : pending_of[v]) ++unassigned[f];
        psi[v] = -1;
        return done;
      };
      for (int c : options[v])
        if (attempt(c, fresh_used)) return true;
      if (chord_end[v])
        for (int f = 0; f < fresh_used; ++f)
          if (attempt(palette + f, fresh_used)) return true;
      return attempt(palette + fresh_used, fresh_used + 1);
    };
    return rec(0, 0);
  };

  // Free-vertex lists up to color permutation: each list is a subset of the
  // colors used so far plus a block of the lowest unused colors.
  std::function<bool(int, int)> assign = [&](int i, int used) -> bool {
    if (i == nf) return critical_for_lists();
    const int size = std::max(0, s[free[i]]);
    for (int fresh = 0; fresh <= size; ++fresh) {
      const int old = size - fresh;
      if (old > used || used + fresh > palette) continue;
      std::vector<int> pick(old);
      std::function<bool(int, int)> choose = [&](int from, int k) -> bool {
        if (k == old) {
          ColorMask m = 0;
          for (int c : pick) m |= ColorMask{1} << c;
          for (int c = 0; c < fresh; ++c) m |= ColorMask{1} << (used + c);
          lists[i] = m;
          return assign(i + 1, used + fresh);
        }
        for (int c = from; c < used; ++c) {
          pick[k] = c;
          if (choose(c + 1, k + 1)) return true;
        }
        return false;
      };
      if (choose(0, 0)) return true;
    }
    return false;
  };
  return assign(0, 0);
}

}  // namespace listcrit
