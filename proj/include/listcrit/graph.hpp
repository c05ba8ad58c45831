#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace listcrit {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with an adjacency matrix for
/// constant-time adjacency queries. Neighbor lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n), mat_(static_cast<std::size_t>(n) * n, 0) {}

  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int order() const { return n_; }
  int size() const { return m_; }

  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (adjacent(u, v)) throw std::invalid_argument("Graph: parallel edge");
    mat_[idx(u, v)] = mat_[idx(v, u)] = 1;
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
  }

  bool adjacent(Vertex u, Vertex v) const { return mat_[idx(u, v)] != 0; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Subgraph induced by `keep` (listed in the order that defines new ids).
  Graph induced(std::span<const Vertex> keep) const {
    std::vector<Vertex> to_new(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) to_new[keep[i]] = static_cast<Vertex>(i);
    Graph h(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (Vertex w : adj_[keep[i]])
        if (to_new[w] > static_cast<Vertex>(i)) h.add_edge(static_cast<Vertex>(i), to_new[w]);
    return h;
  }

  /// Graph with vertex v renamed to perm[v].
  Graph relabeled(std::span<const Vertex> perm) const {
    Graph h(n_);
    for (auto [u, v] : edges()) h.add_edge(perm[u], perm[v]);
    return h;
  }

  /// Connected components as sorted vertex lists, ordered by smallest vertex.
  std::vector<std::vector<Vertex>> components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < n_; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<Vertex> members{s};
      comp[s] = static_cast<int>(out.size());
      for (std::size_t i = 0; i < members.size(); ++i)
        for (Vertex w : adj_[members[i]])
          if (comp[w] < 0) {
            comp[w] = comp[s];
            members.push_back(w);
          }
      std::sort(members.begin(), members.end());
      out.push_back(std::move(members));
    }
    return out;
  }

  bool connected() const { return n_ == 0 || components().size() == 1; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  std::size_t idx(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex id out of range");
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint8_t> mat_;
};

/// Multi-source BFS distance between vertex sets; -1 when unreachable.
inline int graph_distance(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to) {
  if (from.empty() || to.empty()) throw std::invalid_argument("graph_distance: empty vertex set");
  std::vector<int> dist(g.order(), -1);
  std::vector<Vertex> queue;
  for (Vertex v : from)
    if (dist[v] < 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  std::vector<char> target(g.order(), 0);
  for (Vertex v : to) target[v] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex v = queue[i];
    if (target[v]) return dist[v];
    for (Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return -1;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

/// Join: every vertex of a adjacent to every vertex of b (b shifted by |a|).
inline Graph graph_join(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(u + a.order(), v + a.order());
  for (Vertex u = 0; u < a.order(); ++u)
    for (Vertex v = 0; v < b.order(); ++v) g.add_edge(u, a.order() + v);
  return g;
}

}  // namespace listcrit
