#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace listcrit {

/// Injective map pattern -> host preserving edges (not necessarily induced),
/// found by backtracking with degree and adjacency pruning.
inline std::optional<std::vector<Vertex>> find_subgraph(const Graph& pattern, const Graph& host) {
  const int np = pattern.order();
  const int nh = host.order();
  if (np > nh || pattern.size() > host.size()) return std::nullopt;
  if (np == 0) return std::vector<Vertex>{};
  if (pattern.max_degree() > host.max_degree()) return std::nullopt;

  // Connected-first ordering: each vertex after the first of its component
  // has an already-ordered neighbor, highest degree first.
  std::vector<Vertex> order;
  std::vector<char> placed(np, 0);
  std::vector<int> links(np, 0);
  while (static_cast<int>(order.size()) < np) {
    Vertex best = -1;
    for (Vertex v = 0; v < np; ++v) {
      if (placed[v]) continue;
      if (best < 0 || links[v] > links[best] ||
          (links[v] == links[best] && pattern.degree(v) > pattern.degree(best)))
        best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (Vertex w : pattern.neighbors(best)) ++links[w];
  }

  std::vector<Vertex> image(np, -1);
  std::vector<char> used(nh, 0);
  std::vector<std::vector<Vertex>> earlier(np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < i; ++j)
      if (pattern.adjacent(order[i], order[j])) earlier[i].push_back(order[j]);

  auto extend = [&](auto&& self, int i) -> bool {
    if (i == np) return true;
    const Vertex p = order[i];
    auto try_host = [&](Vertex h) -> bool {
      if (used[h] || host.degree(h) < pattern.degree(p)) return false;
      for (Vertex q : earlier[i])
        if (!host.adjacent(h, image[q])) return false;
      image[p] = h;
      used[h] = 1;
      if (self(self, i + 1)) return true;
      used[h] = 0;
      image[p] = -1;
      return false;
    };
    if (!earlier[i].empty()) {
      for (Vertex h : host.neighbors(image[earlier[i].front()]))
        if (try_host(h)) return true;
    } else {
      for (Vertex h = 0; h < nh; ++h)
        if (try_host(h)) return true;
    }
    return false;
  };
  if (extend(extend, 0)) return image;
  return std::nullopt;
}

inline bool subgraph_isomorphic(const Graph& pattern, const Graph& host) {
  return find_subgraph(pattern, host).has_value();
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.size() == b.size() && subgraph_isomorphic(a, b);
}

namespace detail {

// Equitable refinement of an ordered partition (cell index per vertex).
inline std::vector<int> refine(const Graph& g, std::vector<int> cell) {
  const int n = g.order();
  for (;;) {
    std::vector<std::pair<std::vector<int>, Vertex>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s{cell[v]};
      std::vector<int> nb;
      for (Vertex w : g.neighbors(v)) nb.push_back(cell[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::map<std::vector<int>, int> ids;
    for (auto& [s, v] : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<int> out(n);
    for (auto& [s, v] : sig) out[v] = ids[s];
    int before = 1 + *std::max_element(cell.begin(), cell.end());
    if (next == before) return out;
    cell = std::move(out);
  }
}

}  // namespace detail

struct CanonicalLabeling {
  std::string matrix;         // upper triangle, row by row
  std::vector<Vertex> perm;   // old id -> canonical id
};

/// Labeling with the smallest adjacency matrix over the leaves of an
/// individualization-refinement search tree.
inline CanonicalLabeling canonical_labeling(const Graph& g) {
  const int n = g.order();
  CanonicalLabeling best;
  if (n == 0) return best;
  std::vector<int> start(n);
  for (Vertex v = 0; v < n; ++v) start[v] = g.degree(v);
  {
    std::vector<int> degs(start);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
    for (auto& c : start) c = static_cast<int>(std::lower_bound(degs.begin(), degs.end(), c) - degs.begin());
  }
  auto search = [&](auto&& self, std::vector<int> cell) -> void {
    cell = detail::refine(g, std::move(cell));
    const int cells = 1 + *std::max_element(cell.begin(), cell.end());
    if (cells == n) {
      std::vector<Vertex> at(n);
      for (Vertex v = 0; v < n; ++v) at[cell[v]] = v;
      std::string s(static_cast<std::size_t>(n) * (n - 1) / 2, '0');
      std::size_t k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s[k++] = g.adjacent(at[i], at[j]) ? '1' : '0';
      if (best.perm.empty() || s < best.matrix) best = {std::move(s), std::move(cell)};
      return;
    }
    std::vector<int> size(cells, 0);
    for (int c : cell) ++size[c];
    int target = -1;
    for (int c = 0; c < cells; ++c)
      if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
    for (Vertex v = 0; v < n; ++v) {
      if (cell[v] != target) continue;
      std::vector<int> child(cell);
      for (auto& c : child)
        if (c > target) ++c;
      for (Vertex u = 0; u < n; ++u)
        if (cell[u] == target && u != v) child[u] = target + 1;
      self(self, std::move(child));
    }
  };
  search(search, start);
  return best;
}

/// Canonical string of an abstract graph: order and canonical matrix.
inline std::string canonical_graph_string(const Graph& g) {
  return std::to_string(g.order()) + ":" + canonical_labeling(g).matrix;
}

}  // namespace listcrit
