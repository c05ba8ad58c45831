#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace listcrit {

/// Directed edge of an embedded graph.
struct Dart {
  Vertex from = -1;
  Vertex to = -1;
  auto operator<=>(const Dart&) const = default;
  Dart reversed() const { return {to, from}; }
};

/// Closed boundary walk of one face, as the sequence of darts traversed.
using FaceWalk = std::vector<Dart>;

/// Per-vertex clockwise neighbor order.
using RotationSystem = std::vector<std::vector<Vertex>>;

/// Connected simple graph embedded in the sphere by a rotation system.
///
/// rotation(v) is the cyclic (clockwise) order of neighbors of v. Faces are
/// the orbits of the map (u -> v) |-> (v -> w) where w follows u in
/// rotation(v). A distinguished dart on the outer face may be recorded.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  explicit PlaneGraph(std::vector<std::vector<Vertex>> rotation, Dart outer = {})
      : rot_(std::move(rotation)), outer_(outer) {
    const int n = order();
    std::vector<char> seen(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex u : rot_[v]) {
        if (u < 0 || u >= n) throw std::invalid_argument("PlaneGraph: neighbor id out of range");
        if (u == v) throw std::invalid_argument("PlaneGraph: self-loop");
        if (seen[u]) throw std::invalid_argument("PlaneGraph: repeated neighbor in rotation");
        seen[u] = 1;
        m2_ += 1;
      }
      for (Vertex u : rot_[v]) seen[u] = 0;
    }
    for (Vertex v = 0; v < n; ++v)
      for (Vertex u : rot_[v])
        if (position(u, v) < 0) throw std::invalid_argument("PlaneGraph: asymmetric rotation system");
    if (outer_.from >= 0 && position(outer_.from, outer_.to) < 0)
      throw std::invalid_argument("PlaneGraph: outer dart is not an edge");
  }

  int order() const { return static_cast<int>(rot_.size()); }
  int size() const { return m2_ / 2; }
  int degree(Vertex v) const { return static_cast<int>(rot_[v].size()); }
  std::span<const Vertex> rotation(Vertex v) const { return rot_[v]; }
  const std::vector<std::vector<Vertex>>& rotations() const { return rot_; }

  Dart outer() const { return outer_; }
  bool has_outer() const { return outer_.from >= 0; }
  void set_outer(Dart d) {
    if (position(d.from, d.to) < 0) throw std::invalid_argument("PlaneGraph: outer dart is not an edge");
    outer_ = d;
  }

  /// Index of u in rotation(v), or -1.
  int position(Vertex v, Vertex u) const {
    const auto& r = rot_[v];
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == u) return static_cast<int>(i);
    return -1;
  }

  bool adjacent(Vertex u, Vertex v) const { return position(u, v) >= 0; }

  Vertex next_around(Vertex v, Vertex u) const {
    const int p = position(v, u);
    return rot_[v][(p + 1) % degree(v)];
  }
  Vertex prev_around(Vertex v, Vertex u) const {
    const int p = position(v, u);
    return rot_[v][(p + degree(v) - 1) % degree(v)];
  }

  /// Successor dart along the face to the right-hand traversal rule.
  Dart next_in_face(Dart d) const { return {d.to, next_around(d.to, d.from)}; }

  Graph abstract() const {
    Graph g(order());
    for (Vertex v = 0; v < order(); ++v)
      for (Vertex u : rot_[v])
        if (v < u) g.add_edge(v, u);
    return g;
  }

  /// Mirror image: every rotation reversed. Face orbits reverse direction, so
  /// the outer dart is reversed as well.
  PlaneGraph mirrored() const {
    auto r = rot_;
    for (auto& row : r) std::reverse(row.begin(), row.end());
    return PlaneGraph(std::move(r), has_outer() ? outer_.reversed() : Dart{});
  }

  /// Rename vertex v to perm[v]; each rotation is rotated to start at its
  /// smallest new label so equal embeddings have equal representations.
  PlaneGraph relabeled(std::span<const Vertex> perm) const {
    std::vector<std::vector<Vertex>> r(order());
    for (Vertex v = 0; v < order(); ++v) {
      auto& row = r[perm[v]];
      for (Vertex u : rot_[v]) row.push_back(perm[u]);
      if (!row.empty()) std::rotate(row.begin(), std::min_element(row.begin(), row.end()), row.end());
    }
    return PlaneGraph(std::move(r), has_outer() ? Dart{perm[outer_.from], perm[outer_.to]} : Dart{});
  }

  bool connected() const { return abstract().connected(); }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    return a.rot_ == b.rot_ && a.outer_ == b.outer_;
  }

 private:
  std::vector<std::vector<Vertex>> rot_;
  int m2_ = 0;
  Dart outer_{};
};

/// Face walk starting at dart d.
inline FaceWalk face_of(const PlaneGraph& g, Dart d) {
  FaceWalk walk{d};
  for (Dart e = g.next_in_face(d); e != d; e = g.next_in_face(e)) walk.push_back(e);
  return walk;
}

/// Vertex sequence (dart tails) of a face walk.
inline std::vector<Vertex> walk_vertices(const FaceWalk& walk) {
  std::vector<Vertex> out;
  out.reserve(walk.size());
  for (const Dart& d : walk) out.push_back(d.from);
  return out;
}

/// All face walks; every dart lies on exactly one. Each walk starts at its
/// smallest dart and walks are ordered by that dart.
inline std::vector<FaceWalk> trace_faces(const PlaneGraph& g) {
  std::vector<std::vector<char>> used(g.order());
  for (Vertex v = 0; v < g.order(); ++v) used[v].assign(g.degree(v), 0);
  std::vector<FaceWalk> faces;
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> order(g.rotation(v).begin(), g.rotation(v).end());
    std::sort(order.begin(), order.end());
    for (Vertex u : order) {
      if (used[v][g.position(v, u)]) continue;
      FaceWalk walk = face_of(g, {v, u});
      for (const Dart& d : walk) used[d.from][g.position(d.from, d.to)] = 1;
      faces.push_back(std::move(walk));
    }
  }
  return faces;
}

inline int euler_characteristic(const PlaneGraph& g) {
  return g.order() - g.size() + static_cast<int>(trace_faces(g).size());
}

/// Connected and n - m + f = 2.
inline bool is_spherical(const PlaneGraph& g) {
  if (g.order() == 0) return false;
  if (g.order() == 1) return true;
  return g.connected() && euler_characteristic(g) == 2;
}

/// True iff `cycle` is a cycle of g without chords. Throws if it is not a cycle.
inline bool is_induced_cycle(const Graph& g, std::span<const Vertex> cycle) {
  const int len = static_cast<int>(cycle.size());
  if (len < 3) throw std::invalid_argument("is_induced_cycle: fewer than three vertices");
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < len; ++i) {
    if (cycle[i] < 0 || cycle[i] >= g.order() || pos[cycle[i]] >= 0)
      throw std::invalid_argument("is_induced_cycle: not a cycle (repeated or invalid vertex)");
    pos[cycle[i]] = i;
  }
  for (int i = 0; i < len; ++i)
    if (!g.adjacent(cycle[i], cycle[(i + 1) % len]))
      throw std::invalid_argument("is_induced_cycle: consecutive vertices not adjacent");
  for (int i = 0; i < len; ++i)
    for (Vertex w : g.neighbors(cycle[i])) {
      const int j = pos[w];
      if (j < 0) continue;
      const int gap = (j - i + len) % len;
      if (gap != 1 && gap != len - 1) return false;
    }
  return true;
}

inline bool is_induced_cycle(const PlaneGraph& g, std::span<const Vertex> cycle) {
  return is_induced_cycle(g.abstract(), cycle);
}

/// Pastes a disk into a face of `host`.
///
/// `disk` has its outer face traced by the cycle `disk_boundary` (orbit
/// order); `walk` lists the vertices of a face of `host` in orbit order and
/// has the same length L. Boundary vertex i of the disk is identified with
/// walk[(offset - i) mod L], which keeps the two orientations compatible.
/// The walk may repeat vertices. Returns nullopt if the identification would
/// create a loop or a parallel edge. `disk_to_host`, if given, receives the
/// image of every disk vertex.
inline std::optional<PlaneGraph> paste_disk(const PlaneGraph& host, std::span<const Vertex> walk,
                                            const PlaneGraph& disk, std::span<const Vertex> disk_boundary,
                                            int offset, std::vector<Vertex>* disk_to_host = nullptr) {
  const int len = static_cast<int>(walk.size());
  if (len != static_cast<int>(disk_boundary.size()))
    throw std::invalid_argument("paste_disk: boundary length differs from face length");
  std::vector<Vertex> image(disk.order(), -1);
  std::vector<int> bpos(disk.order(), -1);
  for (int i = 0; i < len; ++i) {
    bpos[disk_boundary[i]] = i;
    image[disk_boundary[i]] = walk[((offset - i) % len + len) % len];
  }
  int next_id = host.order();
  for (Vertex v = 0; v < disk.order(); ++v)
    if (image[v] < 0) image[v] = next_id++;

  std::vector<std::vector<Vertex>> rot(next_id);
  for (Vertex v = 0; v < host.order(); ++v) rot[v].assign(host.rotation(v).begin(), host.rotation(v).end());
  for (Vertex v = 0; v < disk.order(); ++v) {
    if (bpos[v] >= 0) continue;
    for (Vertex u : disk.rotation(v)) rot[image[v]].push_back(image[u]);
  }

  // Interior edges at boundary vertex b_i go into the face corner of walk
  // position j = offset - i, right after the walk predecessor.
  struct Insert {
    Vertex at;
    Vertex after;
    std::vector<Vertex> items;
  };
  std::vector<Insert> inserts;
  for (int i = 0; i < len; ++i) {
    const Vertex b = disk_boundary[i];
    const Vertex prev = disk_boundary[(i + len - 1) % len];
    const Vertex next = disk_boundary[(i + 1) % len];
    const auto r = disk.rotation(b);
    const int d = static_cast<int>(r.size());
    const int pn = disk.position(b, next);
    if (pn < 0 || disk.position(b, prev) < 0) throw std::invalid_argument("paste_disk: boundary is not a cycle");
    std::vector<Vertex> items;
    for (int k = 1; k < d; ++k) {
      const Vertex u = r[(pn + k) % d];
      if (u == prev) break;
      if (bpos[u] >= 0) throw std::invalid_argument("paste_disk: disk boundary has a chord");
      items.push_back(image[u]);
    }
    if (items.empty()) continue;
    const int j = ((offset - i) % len + len) % len;
    inserts.push_back({walk[j], walk[(j + len - 1) % len], std::move(items)});
  }
  for (const auto& ins : inserts) {
    auto& row = rot[ins.at];
    auto it = std::find(row.begin(), row.end(), ins.after);
    if (it == row.end()) throw std::invalid_argument("paste_disk: walk is not a face of the host");
    row.insert(it + 1, ins.items.begin(), ins.items.end());
  }
  for (const auto& row : rot) {
    std::vector<Vertex> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  }
  if (disk_to_host) *disk_to_host = image;
  return PlaneGraph(std::move(rot), host.outer());
}

}  // namespace listcrit
