#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "colorability.hpp"
#include "cycle_canvas.hpp"
#include "plane_graph.hpp"
#include "work_queue.hpp"

namespace listcrit {

using Triangle = std::array<Vertex, 3>;

/// Plane graph with two triangular boundary faces. Each triangle is listed
/// in face-orbit order: face_of({t[0], t[1]}) is the boundary face.
struct PrismCanvas {
  PlaneGraph graph;
  Triangle t1{};
  Triangle t2{};

  int order() const { return graph.order(); }
};

inline Dart face_dart(const Triangle& t) { return {t[0], t[1]}; }

inline bool bounds_face(const PlaneGraph& g, const Triangle& t) {
  if (g.position(t[0], t[1]) < 0) return false;
  const auto w = walk_vertices(face_of(g, face_dart(t)));
  return w.size() == 3 && w[1] == t[1] && w[2] == t[2];
}

inline PrismCanvas make_prism_canvas(PlaneGraph g, Triangle t1, Triangle t2) {
  if (!bounds_face(g, t1) || !bounds_face(g, t2))
    throw std::invalid_argument("make_prism_canvas: triangle does not bound a face");
  auto same_face = [&] {
    for (const Dart& d : face_of(g, face_dart(t1)))
      if (d == face_dart(t2)) return true;
    return false;
  };
  if (same_face()) throw std::invalid_argument("make_prism_canvas: boundary faces coincide");
  if (!g.connected()) throw std::invalid_argument("make_prism_canvas: graph is disconnected");
  g.set_outer(face_dart(t1));
  return {std::move(g), t1, t2};
}

inline std::vector<Vertex> sorted_vertices(const Triangle& t) {
  std::vector<Vertex> v(t.begin(), t.end());
  std::sort(v.begin(), v.end());
  return v;
}

inline int spacing(const PrismCanvas& pc) {
  return graph_distance(pc.graph.abstract(), sorted_vertices(pc.t1), sorted_vertices(pc.t2));
}

/// V(T1 u T2), sorted.
inline std::vector<Vertex> boundary_vertices(const PrismCanvas& pc) {
  std::vector<Vertex> v(pc.t1.begin(), pc.t1.end());
  v.insert(v.end(), pc.t2.begin(), pc.t2.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// E(T1 u T2) with u < v, sorted.
inline std::vector<Edge> boundary_edges(const PrismCanvas& pc) {
  std::vector<Edge> e;
  for (const Triangle* t : {&pc.t1, &pc.t2})
    for (int i = 0; i < 3; ++i) {
      const Vertex a = (*t)[i], b = (*t)[(i + 1) % 3];
      e.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

struct PrismForm {
  CanonicalForm form;
  bool swapped = false;  // winner anchored at t2
};

struct PrismKeyOptions {
  Reflection reflection = Reflection::Distinguish;
  /// Identify a canvas with the one obtained by exchanging t1 and t2.
  bool end_swap = true;
};

inline PrismForm prism_canonical_form(const PrismCanvas& pc, const PrismKeyOptions& opt = {}) {
  auto anchored = [&](const Triangle& a, const Triangle& b) {
    std::vector<Dart> anchors;
    for (const Dart& d : face_of(pc.graph, face_dart(a))) anchors.push_back(d);
    std::vector<std::vector<Vertex>> marks{sorted_vertices(a), sorted_vertices(b)};
    return canonical_form(pc.graph, anchors, marks, opt.reflection);
  };
  PrismForm best{anchored(pc.t1, pc.t2), false};
  if (opt.end_swap) {
    auto other = anchored(pc.t2, pc.t1);
    if (other.key < best.form.key) best = {std::move(other), true};
  }
  return best;
}

inline CanonicalKey prism_key(const PrismCanvas& pc, const PrismKeyOptions& opt = {}) {
  return prism_canonical_form(pc, opt).form.key;
}

inline PrismCanvas mirrored(const PrismCanvas& pc) {
  auto flip = [](const Triangle& t) { return Triangle{t[1], t[0], t[2]}; };
  return make_prism_canvas(pc.graph.mirrored(), flip(pc.t1), flip(pc.t2));
}

inline Triangle rotated_to_min(Triangle t) {
  std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
  return t;
}

/// Representative relabeled in first-visit order of the winning transcript,
/// with the winning end as t1 and the winning reading sense clockwise.
inline PrismCanvas canonical_prism_canvas(const PrismCanvas& pc, const PrismForm& f) {
  PrismCanvas base = f.form.mirrored ? mirrored(pc) : pc;
  if (f.swapped) std::swap(base.t1, base.t2);
  std::vector<Vertex> perm(base.order(), -1);
  int next = 0;
  for (Vertex v : f.form.visit_order) perm[v] = next++;
  if (next != base.order()) throw std::logic_error("canonical_prism_canvas: transcript missed vertices");
  auto map = [&](const Triangle& t) { return rotated_to_min({perm[t[0]], perm[t[1]], perm[t[2]]}); };
  return make_prism_canvas(base.graph.relabeled(perm), map(base.t1), map(base.t2));
}

inline PrismCanvas canonical_prism_canvas(const PrismCanvas& pc, const PrismKeyOptions& opt = {}) {
  return canonical_prism_canvas(pc, prism_canonical_form(pc, opt));
}

inline Verdict filter_prism_canvas(const PrismCanvas& pc, const FilterOptions& opt = {}) {
  const auto bv = boundary_vertices(pc);
  return criticality_filter(pc.graph.abstract(), bv, static_cast<int>(boundary_edges(pc).size()), 5, opt);
}

namespace detail {

// Every rotation system of g (first neighbor of each vertex fixed) that is
// spherical.
inline std::vector<PlaneGraph> plane_embeddings(const Graph& g) {
  const int n = g.order();
  RotationSystem rot(n);
  for (Vertex v = 0; v < n; ++v) rot[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  for (auto& r : rot) std::sort(r.begin(), r.end());
  std::vector<PlaneGraph> out;
  std::function<void(Vertex)> rec = [&](Vertex v) {
    if (v == n) {
      PlaneGraph p(rot, Dart{});
      if (is_spherical(p)) out.push_back(std::move(p));
      return;
    }
    if (rot[v].size() <= 2) {
      rec(v + 1);
      return;
    }
    auto& r = rot[v];
    std::sort(r.begin() + 1, r.end());
    do {
      rec(v + 1);
    } while (std::next_permutation(r.begin() + 1, r.end()));
  };
  rec(0);
  return out;
}

// Faces whose walk is the triangle with vertex set `tri`, as oriented triples.
inline std::vector<Triangle> triangle_faces(const PlaneGraph& g, std::vector<Vertex> tri) {
  std::sort(tri.begin(), tri.end());
  std::vector<Triangle> out;
  for (const auto& f : trace_faces(g)) {
    if (f.size() != 3) continue;
    auto w = walk_vertices(f);
    auto s = w;
    std::sort(s.begin(), s.end());
    if (s == tri) out.push_back({w[0], w[1], w[2]});
  }
  return out;
}

// Inserts edge uv through one face other than the boundary faces, in every
// possible pair of corners.
inline std::vector<PrismCanvas> insert_edge(const PrismCanvas& pc, Vertex u, Vertex v) {
  std::vector<PrismCanvas> out;
  if (pc.graph.adjacent(u, v)) return out;
  const auto faces = trace_faces(pc.graph);
  for (const auto& f : faces) {
    bool boundary = false;
    for (const Dart& d : f) boundary = boundary || d == face_dart(pc.t1) || d == face_dart(pc.t2);
    if (boundary) continue;
    // Corner at d.to between d.from and the next vertex of the walk.
    for (const Dart& du : f) {
      if (du.to != u) continue;
      for (const Dart& dv : f) {
        if (dv.to != v) continue;
        auto rot = pc.graph.rotations();
        auto put = [&](Vertex at, Vertex after, Vertex item) {
          auto& r = rot[at];
          r.insert(std::find(r.begin(), r.end(), after) + 1, item);
        };
        put(u, du.from, v);
        put(v, dv.from, u);
        PlaneGraph g(std::move(rot), pc.graph.outer());
        if (!is_spherical(g)) continue;
        out.push_back(make_prism_canvas(std::move(g), pc.t1, pc.t2));
      }
    }
  }
  return out;
}

struct SkeletonShape {
  Graph base;
  Triangle t1;
  Triangle t2;
  std::vector<Edge> optional_edges;
};

inline std::vector<SkeletonShape> skeleton_shapes(int d) {
  std::vector<SkeletonShape> shapes;
  auto triangles = [](Graph& g, const Triangle& a, const Triangle& b) {
    for (const Triangle* t : {&a, &b})
      for (int i = 0; i < 3; ++i)
        if (!g.adjacent((*t)[i], (*t)[(i + 1) % 3])) g.add_edge((*t)[i], (*t)[(i + 1) % 3]);
  };
  if (d == 0) {
    {
      Graph g(5);
      Triangle a{0, 1, 2}, b{0, 3, 4};
      triangles(g, a, b);
      shapes.push_back({g, a, b, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}});
    }
    {
      Graph g(4);
      Triangle a{0, 1, 2}, b{0, 1, 3};
      triangles(g, a, b);
      shapes.push_back({g, a, b, {{2, 3}}});
    }
  } else if (d == 1) {
    Triangle a{0, 1, 2}, b{3, 4, 5};
    std::vector<Edge> cross;
    for (Vertex x = 0; x < 3; ++x)
      for (Vertex y = 3; y < 6; ++y) cross.push_back({x, y});
    // The smallest cross edge present is part of the base.
    for (std::size_t first = 0; first < cross.size(); ++first) {
      Graph g(6);
      triangles(g, a, b);
      g.add_edge(cross[first].first, cross[first].second);
      shapes.push_back({g, a, b, std::vector<Edge>(cross.begin() + static_cast<std::ptrdiff_t>(first) + 1, cross.end())});
    }
  } else {
    const int n = 6 + d - 1;
    Graph g(n);
    Triangle a{0, 1, 2}, b{3, 4, 5};
    triangles(g, a, b);
    std::vector<Vertex> path{0};
    for (int i = 0; i < d - 1; ++i) path.push_back(6 + i);
    path.push_back(3);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) g.add_edge(path[i], path[i + 1]);
    const Vertex second = path[1], penultimate = path[path.size() - 2];
    shapes.push_back({g, a, b, {{1, second}, {2, second}, {4, penultimate}, {5, penultimate}}});
  }
  return shapes;
}

}  // namespace detail

/// Skeletons of spacing exactly d, one per isomorphism class of prism key.
inline std::vector<PrismCanvas> enumerate_skeletons(int d, const PrismKeyOptions& key_opt = {}) {
  if (d < 0) throw std::invalid_argument("enumerate_skeletons: negative spacing");
  std::map<CanonicalKey, PrismCanvas> found;
  for (const auto& shape : detail::skeleton_shapes(d)) {
    std::vector<PrismCanvas> starts;
    for (const auto& emb : detail::plane_embeddings(shape.base))
      for (const auto& f1 : detail::triangle_faces(emb, {shape.t1.begin(), shape.t1.end()}))
        for (const auto& f2 : detail::triangle_faces(emb, {shape.t2.begin(), shape.t2.end()})) {
          if (face_dart(f1) == face_dart(f2)) continue;
          try {
            starts.push_back(make_prism_canvas(emb, f1, f2));
          } catch (const std::invalid_argument&) {
          }
        }
    // Optional edges are considered in order; each is skipped or inserted
    // in every possible way.
    std::function<void(const PrismCanvas&, std::size_t)> rec = [&](const PrismCanvas& pc, std::size_t i) {
      if (i == shape.optional_edges.size()) {
        if (spacing(pc) == d) {
          auto canon = canonical_prism_canvas(pc, key_opt);
          found.emplace(prism_key(canon, key_opt), std::move(canon));
        }
        return;
      }
      rec(pc, i + 1);
      for (const auto& next : detail::insert_edge(pc, shape.optional_edges[i].first, shape.optional_edges[i].second))
        rec(next, i + 1);
    };
    for (const auto& s : starts) rec(s, 0);
  }
  std::vector<PrismCanvas> out;
  for (auto& [k, pc] : found) out.push_back(std::move(pc));
  return out;
}

struct PrismEntry {
  CanonicalKey key;
  PrismCanvas canvas;
};

/// Candidates per spacing, each sorted by key.
using PrismLibrary = std::map<int, std::vector<PrismEntry>>;

struct PrismGenOptions {
  FilterOptions filter{};
  PrismKeyOptions key{};
  int jobs = 1;
  std::function<void(const PrismCanvas&, const CanonicalKey&, const Verdict&)> on_discard;
};

namespace detail {

// Dedup-then-filter collector shared by pasting and gluing.
class PrismCollector {
 public:
  explicit PrismCollector(const PrismGenOptions& opt) : opt_(opt) {}

  void preload(const CanonicalKey& k) { seen_.insert(k); }

  // Returns true if pc was new and survived the filter.
  bool consider(const PrismCanvas& pc) {
    auto form = prism_canonical_form(pc, opt_.key);
    if (!seen_.insert(form.form.key)) return false;
    PrismCanvas rep = canonical_prism_canvas(pc, form);
    Verdict v = filter_prism_canvas(rep, opt_.filter);
    std::lock_guard lock(mutex_);
    if (v.reducible()) {
      if (opt_.on_discard) opt_.on_discard(rep, form.form.key, v);
      return false;
    }
    survivors_.push_back({std::move(form.form.key), std::move(rep)});
    return true;
  }

  std::vector<PrismEntry> take_sorted() {
    std::lock_guard lock(mutex_);
    std::vector<PrismEntry> out;
    out.swap(survivors_);
    std::sort(out.begin(), out.end(), [](const PrismEntry& a, const PrismEntry& b) { return a.key < b.key; });
    return out;
  }

 private:
  const PrismGenOptions& opt_;
  ConcurrentKeySet seen_;
  std::mutex mutex_;
  std::vector<PrismEntry> survivors_;
};

// Non-boundary faces of a skeleton as vertex walks.
inline std::vector<std::vector<Vertex>> inner_faces(const PrismCanvas& sk) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& f : trace_faces(sk.graph)) {
    bool boundary = false;
    for (const Dart& d : f) boundary = boundary || d == face_dart(sk.t1) || d == face_dart(sk.t2);
    if (!boundary) out.push_back(walk_vertices(f));
  }
  return out;
}

struct FaceFill {
  const CycleCanvas* canvas = nullptr;  // nullptr: face stays empty
  int offset = 0;
};

inline std::vector<FaceFill> fills_for(std::size_t len, const CycleLibrary& lib) {
  std::vector<FaceFill> out{{}};
  auto it = lib.find(static_cast<int>(len));
  if (it == lib.end()) return out;
  for (const auto& e : it->second)
    for (int o = 0; o < static_cast<int>(len); ++o) out.push_back({&e.canvas, o});
  return out;
}

}  // namespace detail

/// Every way of pasting library canvases into the inner faces of `sk`;
/// calls fn on each result whose spacing is d.
inline void for_each_pasting(const PrismCanvas& sk, const CycleLibrary& lib, int d,
                             const std::function<void(const PrismCanvas&)>& fn, int first_face_choice = -1) {
  const auto faces = detail::inner_faces(sk);
  std::vector<std::vector<detail::FaceFill>> choices;
  for (const auto& f : faces) choices.push_back(detail::fills_for(f.size(), lib));
  std::function<void(const PlaneGraph&, std::size_t)> rec = [&](const PlaneGraph& g, std::size_t i) {
    if (i == faces.size()) {
      PrismCanvas pc = make_prism_canvas(g, sk.t1, sk.t2);
      if (spacing(pc) == d) fn(pc);
      return;
    }
    auto apply = [&](const detail::FaceFill& fill) {
      if (!fill.canvas) {
        rec(g, i + 1);
        return;
      }
      auto pasted = paste_disk(g, faces[i], fill.canvas->graph, fill.canvas->boundary, fill.offset);
      if (pasted) rec(*pasted, i + 1);
    };
    if (i == 0 && first_face_choice >= 0) {
      apply(choices[0][static_cast<std::size_t>(first_face_choice)]);
      return;
    }
    for (const auto& fill : choices[i]) apply(fill);
  };
  rec(sk.graph, 0);
}

/// Number of choices for the first inner face of `sk` (work-splitting unit).
inline std::size_t first_face_choices(const PrismCanvas& sk, const CycleLibrary& lib) {
  const auto faces = detail::inner_faces(sk);
  return faces.empty() ? 1 : detail::fills_for(faces[0].size(), lib).size();
}

/// Candidates of spacing d from skeletons plus pasting, deduplicated and
/// filtered. The library must be complete through circumference 2d + 6.
inline std::vector<PrismEntry> paste_into_skeletons(int d, const CycleLibrary& lib, const PrismGenOptions& opt = {}) {
  const auto skeletons = enumerate_skeletons(d, opt.key);
  struct Item {
    std::size_t skeleton;
    int choice;
  };
  std::vector<Item> items;
  for (std::size_t s = 0; s < skeletons.size(); ++s) {
    const bool has_faces = !detail::inner_faces(skeletons[s]).empty();
    if (!has_faces) {
      items.push_back({s, -1});
      continue;
    }
    const auto n = first_face_choices(skeletons[s], lib);
    for (std::size_t c = 0; c < n; ++c) items.push_back({s, static_cast<int>(c)});
  }
  detail::PrismCollector collector(opt);
  parallel_for(items.size(), opt.jobs, [&](std::size_t i) {
    for_each_pasting(
        skeletons[items[i].skeleton], lib, d, [&](const PrismCanvas& pc) { collector.consider(pc); },
        items[i].choice);
  });
  return collector.take_sorted();
}

/// Every gluing of q2 onto q1 along t2(q1) = t1(q2): three rotations of q2
/// and of its mirror image. Gluings that would create a loop or parallel edge
/// are skipped.
inline std::vector<PrismCanvas> glue_raw(const PrismCanvas& q1, const PrismCanvas& q2) {
  std::vector<PrismCanvas> out;
  const auto walk = walk_vertices(face_of(q1.graph, face_dart(q1.t2)));
  for (bool mirror : {false, true}) {
    const PrismCanvas disk = mirror ? mirrored(q2) : q2;
    const auto boundary = walk_vertices(face_of(disk.graph, face_dart(disk.t1)));
    PlaneGraph dg = disk.graph;
    dg.set_outer(face_dart(disk.t1));
    for (int offset = 0; offset < 3; ++offset) {
      std::vector<Vertex> image;
      auto glued = paste_disk(q1.graph, walk, dg, boundary, offset, &image);
      if (!glued) continue;
      const Triangle t2{image[disk.t2[0]], image[disk.t2[1]], image[disk.t2[2]]};
      if (std::set<Vertex>(t2.begin(), t2.end()).size() != 3) continue;
      try {
        out.push_back(make_prism_canvas(std::move(*glued), q1.t1, t2));
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return out;
}

/// Deduplicated, filtered gluings of q2 onto q1.
inline std::vector<PrismEntry> glue_prisms(const PrismCanvas& q1, const PrismCanvas& q2,
                                           const PrismGenOptions& opt = {}) {
  detail::PrismCollector collector(opt);
  for (const auto& pc : glue_raw(q1, q2)) collector.consider(pc);
  return collector.take_sorted();
}

struct GlueReport {
  std::size_t pairs = 0;
  std::size_t gluings = 0;
  std::map<int, std::size_t> spacing_seen;  // over all gluings, before filtering
  std::vector<PrismEntry> new_candidates;   // survivors not already present
};

/// Filter settings for glued canvases, which are larger than pasted ones:
/// Alon-Tarsi runs on cores of up to 40 edges.
inline FilterOptions glue_filter_options() {
  FilterOptions f;
  f.alon_tarsi.edge_cutoff = 40;
  f.alon_tarsi.max_states = 4'000'000;
  return f;
}

/// Glues every ordered pair with s1 + s2 <= max_d and keeps new survivors of
/// spacing <= max_d; repeats until nothing new appears. New candidates are
/// added to lib.
inline GlueReport glue_closure(PrismLibrary& lib, int max_d, const PrismGenOptions& opt = {}) {
  GlueReport report;
  detail::PrismCollector collector(opt);
  for (const auto& [s, entries] : lib)
    for (const auto& e : entries) collector.preload(e.key);
  std::mutex report_mutex;
  for (;;) {
    std::vector<const PrismEntry*> all;
    for (const auto& [s, entries] : lib)
      for (const auto& e : entries) all.push_back(&e);
    std::vector<int> sp;
    for (const auto* e : all) sp.push_back(spacing(e->canvas));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (sp[i] + sp[j] <= max_d) pairs.push_back({i, j});
    report.pairs += pairs.size();
    parallel_for(pairs.size(), opt.jobs, [&](std::size_t p) {
      auto glued = glue_raw(all[pairs[p].first]->canvas, all[pairs[p].second]->canvas);
      std::vector<int> seen;
      for (const auto& pc : glued) {
        const int s = spacing(pc);
        seen.push_back(s);
        if (s <= max_d) collector.consider(pc);
      }
      std::lock_guard lock(report_mutex);
      report.gluings += glued.size();
      for (int s : seen) ++report.spacing_seen[s];
    });
    auto fresh = collector.take_sorted();
    if (fresh.empty()) break;
    for (auto& e : fresh) {
      report.new_candidates.push_back(e);
      auto& bucket = lib[spacing(e.canvas)];
      bucket.push_back(std::move(e));
      std::sort(bucket.begin(), bucket.end(), [](const PrismEntry& a, const PrismEntry& b) { return a.key < b.key; });
    }
  }
  return report;
}

/// Skeleton pasting for every spacing 0..max_d followed by the glue closure.
inline PrismLibrary enumerate_prisms(int max_d, const CycleLibrary& lib, const PrismGenOptions& opt = {},
                                     GlueReport* glue_report = nullptr) {
  if (max_d < 0) throw std::invalid_argument("enumerate_prisms: negative spacing");
  const int need = 2 * max_d + 6;
  for (int l = 3; l <= need; ++l)
    if (!lib.count(l)) throw std::invalid_argument("enumerate_prisms: cycle library incomplete through " + std::to_string(need));
  PrismLibrary out;
  for (int d = 0; d <= max_d; ++d) out[d] = paste_into_skeletons(d, lib, opt);
  auto report = glue_closure(out, max_d, opt);
  if (glue_report) *glue_report = std::move(report);
  return out;
}

/// Triangles other than t1, t2 that separate the two boundary faces.
inline std::vector<Triangle> separating_triangles(const PrismCanvas& pc) {
  const auto g = pc.graph.abstract();
  const auto t1s = sorted_vertices(pc.t1), t2s = sorted_vertices(pc.t2);
  std::vector<Triangle> out;
  const auto faces = trace_faces(pc.graph);
  std::map<Dart, int> face_id;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (const Dart& d : faces[i]) face_id[d] = static_cast<int>(i);
  const int f1 = face_id.at(face_dart(pc.t1)), f2 = face_id.at(face_dart(pc.t2));
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b : g.neighbors(a)) {
      if (b <= a) continue;
      for (Vertex c : g.neighbors(b)) {
        if (c <= b || !g.adjacent(a, c)) continue;
        std::vector<Vertex> tri{a, b, c};
        if (tri == t1s || tri == t2s) continue;
        auto on_tri = [&](Vertex x, Vertex y) {
          return (x == a || x == b || x == c) && (y == a || y == b || y == c);
        };
        std::vector<int> parent(faces.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (const auto& [d, f] : face_id) {
          if (on_tri(d.from, d.to)) continue;
          parent[find(f)] = find(face_id.at(d.reversed()));
        }
        if (find(f1) != find(f2)) out.push_back({a, b, c});
      }
    }
  return out;
}

/// The parts of pc between t1 and `tri` and between `tri` and t2.
inline std::pair<PrismCanvas, PrismCanvas> split_at_triangle(const PrismCanvas& pc, const Triangle& tri) {
  const auto faces = trace_faces(pc.graph);
  std::map<Dart, int> face_id;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (const Dart& d : faces[i]) face_id[d] = static_cast<int>(i);
  auto on_tri = [&](Vertex x, Vertex y) {
    auto in = [&](Vertex v) { return std::find(tri.begin(), tri.end(), v) != tri.end(); };
    return in(x) && in(y);
  };
  std::vector<int> parent(faces.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [d, f] : face_id)
    if (!on_tri(d.from, d.to)) parent[find(f)] = find(face_id.at(d.reversed()));
  const int side1 = find(face_id.at(face_dart(pc.t1)));
  if (side1 == find(face_id.at(face_dart(pc.t2))))
    throw std::invalid_argument("split_at_triangle: triangle does not separate the boundary faces");

  auto part = [&](bool first) {
    auto keep_dart = [&](const Dart& d) { return (find(face_id.at(d)) == side1) == first; };
    // An edge is kept if either of its darts lies on a face of this side.
    std::vector<Vertex> perm(pc.order(), -1);
    int next = 0;
    for (const auto& [d, f] : face_id)
      if (keep_dart(d) && perm[d.from] < 0) perm[d.from] = next++;
    for (const auto& [d, f] : face_id)
      if (keep_dart(d) && perm[d.to] < 0) perm[d.to] = next++;
    RotationSystem rot(next);
    for (Vertex v = 0; v < pc.order(); ++v) {
      if (perm[v] < 0) continue;
      for (Vertex u : pc.graph.rotation(v))
        if (perm[u] >= 0 && (keep_dart({v, u}) || keep_dart({u, v}))) rot[perm[v]].push_back(perm[u]);
    }
    // The far side of tri becomes a face: a dart of tri whose face was
    // across the cut.
    Triangle cut{};
    for (int i = 0; i < 3; ++i) {
      const Dart d{tri[i], tri[(i + 1) % 3]};
      for (const Dart& e : {d, d.reversed()})
        if (!keep_dart(e)) cut = {perm[e.from], perm[e.to], -1};
    }
    for (Vertex v : tri)
      if (perm[v] != cut[0] && perm[v] != cut[1]) cut[2] = perm[v];
    auto map = [&](const Triangle& t) { return Triangle{perm[t[0]], perm[t[1]], perm[t[2]]}; };
    PlaneGraph g(std::move(rot), Dart{});
    return first ? make_prism_canvas(std::move(g), map(pc.t1), cut) : make_prism_canvas(std::move(g), cut, map(pc.t2));
  };
  return {part(true), part(false)};
}

}  // namespace listcrit
