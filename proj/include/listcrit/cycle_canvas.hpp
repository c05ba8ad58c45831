#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "colorability.hpp"
#include "plane_graph.hpp"
#include "work_queue.hpp"

namespace listcrit {

/// Plane graph whose outer face is bounded by the cycle `boundary`, listed
/// in face-orbit order starting at the tail of the outer dart.
struct CycleCanvas {
  PlaneGraph graph;
  std::vector<Vertex> boundary;

  int circumference() const { return static_cast<int>(boundary.size()); }
  int order() const { return graph.order(); }
};

inline CycleCanvas make_cycle_canvas(PlaneGraph g) {
  if (!g.has_outer()) throw std::invalid_argument("make_cycle_canvas: no outer face");
  auto boundary = walk_vertices(face_of(g, g.outer()));
  auto sorted = boundary;
  std::sort(sorted.begin(), sorted.end());
  if (boundary.size() < 3 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("make_cycle_canvas: outer face is not bounded by a cycle");
  return {std::move(g), std::move(boundary)};
}

/// Trivial canvas: a bare cycle of the given length.
inline CycleCanvas bare_cycle(int len) {
  RotationSystem rot(len);
  for (int i = 0; i < len; ++i) rot[i] = {(i + 1) % len, (i + len - 1) % len};
  return make_cycle_canvas(PlaneGraph(std::move(rot), {1, 0}));
}

inline CanonicalForm cycle_canonical_form(const CycleCanvas& c) {
  auto marks_v = c.boundary;
  std::sort(marks_v.begin(), marks_v.end());
  std::vector<std::vector<Vertex>> marks{marks_v};
  return canonical_form(c.graph, outer_face_anchors(c.graph), marks);
}

inline CanonicalKey cycle_key(const CycleCanvas& c) { return cycle_canonical_form(c).key; }

/// Representative of the isomorphism class: boundary numbered 0..l-1 along
/// the outer face from the winning anchor, interior vertices after it in
/// first-visit order; the winning reading sense becomes clockwise.
inline CycleCanvas canonical_cycle_canvas(const CycleCanvas& c, const CanonicalForm& form) {
  const PlaneGraph base = form.mirrored ? c.graph.mirrored() : c.graph;
  auto walk = walk_vertices(face_of(base, base.outer()));
  std::rotate(walk.begin(), std::find(walk.begin(), walk.end(), form.start.from), walk.end());
  std::vector<Vertex> perm(base.order(), -1);
  int next = 0;
  for (Vertex v : walk) perm[v] = next++;
  for (Vertex v : form.visit_order)
    if (perm[v] < 0) perm[v] = next++;
  PlaneGraph g = base.relabeled(perm);
  g.set_outer({0, 1});
  return make_cycle_canvas(std::move(g));
}

inline CycleCanvas canonical_cycle_canvas(const CycleCanvas& c) {
  return canonical_cycle_canvas(c, cycle_canonical_form(c));
}

inline Verdict filter_cycle_canvas(const CycleCanvas& c, const FilterOptions& opt = {}) {
  return criticality_filter(c.graph.abstract(), c.boundary, c.circumference(), 5, opt);
}

/// New vertex v joined to k >= 3 vertices of the outer cycle. arcs[j] is the
/// number of cycle edges between consecutive neighbors of v; at most the
/// face over arc `filled` receives an inner canvas.
struct TripodPattern {
  std::vector<int> arcs;
  int filled = -1;

  int k() const { return static_cast<int>(arcs.size()); }
};

/// How an inner canvas boundary is laid onto the filled face.
struct Placement {
  int offset = 0;
  bool mirrored = false;
};

namespace detail {

struct TripodHost {
  PlaneGraph graph;
  std::vector<std::vector<Vertex>> arc_faces;  // face walk over each arc
};

// Cycle 0..l-1 drawn counterclockwise, hub l inside joined to the arc ends.
inline TripodHost tripod_host(int circ, const std::vector<int>& arcs) {
  std::vector<int> ends;
  int p = 0;
  for (int a : arcs) {
    ends.push_back(p);
    p += a;
  }
  RotationSystem rot(circ + 1);
  for (int i = 0; i < circ; ++i) rot[i] = {(i + 1) % circ, (i + circ - 1) % circ};
  for (int e : ends) rot[e].push_back(circ);
  for (auto it = ends.rbegin(); it != ends.rend(); ++it) rot[circ].push_back(*it);
  TripodHost h{PlaneGraph(std::move(rot), {1, 0}), {}};
  for (int e : ends) h.arc_faces.push_back(walk_vertices(face_of(h.graph, {e, (e + 1) % circ})));
  return h;
}

}  // namespace detail

/// Canvas with outer cycle of length target_circ and a tripod vertex whose
/// filled face (if any) holds `inner`. Returns nullopt when the pasting would
/// create a parallel edge.
inline std::optional<CycleCanvas> apply_tripod(int target_circ, const TripodPattern& pattern,
                                               const CycleCanvas* inner, Placement place = {}) {
  int total = 0;
  for (int a : pattern.arcs) {
    if (a < 1) throw std::invalid_argument("apply_tripod: arcs must be positive");
    total += a;
  }
  if (pattern.k() < 3) throw std::invalid_argument("apply_tripod: tripod needs at least three neighbors");
  if (total != target_circ) throw std::invalid_argument("apply_tripod: arcs do not sum to the circumference");
  auto host = detail::tripod_host(target_circ, pattern.arcs);
  if (pattern.filled < 0) {
    if (inner) throw std::invalid_argument("apply_tripod: inner canvas given but no face is filled");
    return make_cycle_canvas(std::move(host.graph));
  }
  if (pattern.filled >= pattern.k()) throw std::invalid_argument("apply_tripod: filled index out of range");
  if (!inner) throw std::invalid_argument("apply_tripod: filled face needs an inner canvas");
  if (inner->circumference() != pattern.arcs[pattern.filled] + 2)
    throw std::invalid_argument("apply_tripod: inner circumference does not match the filled face");
  const PlaneGraph disk = place.mirrored ? inner->graph.mirrored() : inner->graph;
  const auto disk_boundary = walk_vertices(face_of(disk, disk.outer()));
  auto pasted = paste_disk(host.graph, host.arc_faces[pattern.filled], disk, disk_boundary, place.offset);
  if (!pasted) return std::nullopt;
  return make_cycle_canvas(std::move(*pasted));
}

struct CanvasEntry {
  CanonicalKey key;
  CycleCanvas canvas;
};

/// Candidates per circumference, each sorted by key.
using CycleLibrary = std::map<int, std::vector<CanvasEntry>>;

/// Compositions of n into k positive parts, in lexicographic order.
inline void for_each_composition(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(parts.size()) == k - 1) {
      if (left >= 1) {
        parts.push_back(left);
        fn(parts);
        parts.pop_back();
      }
      return;
    }
    for (int a = 1; a <= left - (k - 1 - static_cast<int>(parts.size())); ++a) {
      parts.push_back(a);
      rec(left - a);
      parts.pop_back();
    }
  };
  if (k >= 1) rec(n);
}

/// Smallest sequence among all its rotations.
inline bool rotation_minimal(const std::vector<int>& s) {
  std::vector<int> t = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    std::rotate(t.begin(), t.begin() + 1, t.end());
    if (t < s) return false;
  }
  return true;
}

struct CycleGenOptions {
  FilterOptions filter{};
  int jobs = 1;
  /// Called for every new isomorphism class the filter discards.
  std::function<void(const CycleCanvas&, const CanonicalKey&, const Verdict&)> on_discard;
  /// Called once per finished work item with the candidates it found.
  std::function<void(const std::string&, const std::vector<CanvasEntry>&)> on_item_done;
};

/// State carried into a level from an interrupted run.
struct LevelProgress {
  std::vector<CanvasEntry> survivors;
  std::set<std::string> done;
};

namespace detail {

class CycleLevel {
 public:
  CycleLevel(int circ, const CycleGenOptions& opt) : circ_(circ), opt_(opt) {}

  void preload(const std::vector<CanvasEntry>& found) {
    for (const auto& e : found) {
      seen_.insert(e.key);
      survivors_.push_back(e);
    }
  }

  // Examines one construction; new survivors are appended to `out`.
  void consider(const CycleCanvas& c, std::vector<CanvasEntry>& out) {
    auto form = cycle_canonical_form(c);
    if (!seen_.insert(form.key)) return;
    CycleCanvas rep = canonical_cycle_canvas(c, form);
    Verdict v = filter_cycle_canvas(rep, opt_.filter);
    if (v.reducible()) {
      if (opt_.on_discard) {
        std::lock_guard lock(mutex_);
        opt_.on_discard(rep, form.key, v);
      }
      return;
    }
    out.push_back({std::move(form.key), std::move(rep)});
  }

  void finish_item(const std::string& id, std::vector<CanvasEntry>& found) {
    std::lock_guard lock(mutex_);
    if (opt_.on_item_done) opt_.on_item_done(id, found);
    for (auto& e : found) survivors_.push_back(std::move(e));
  }

  std::vector<CanvasEntry> take_sorted() {
    std::sort(survivors_.begin(), survivors_.end(),
              [](const CanvasEntry& a, const CanvasEntry& b) { return a.key < b.key; });
    return std::move(survivors_);
  }

  std::size_t survivor_count() {
    std::lock_guard lock(mutex_);
    return survivors_.size();
  }
  std::vector<CanvasEntry> survivors_from(std::size_t start) {
    std::lock_guard lock(mutex_);
    return {survivors_.begin() + static_cast<std::ptrdiff_t>(start), survivors_.end()};
  }

  int circ() const { return circ_; }

 private:
  int circ_;
  const CycleGenOptions& opt_;
  ConcurrentKeySet seen_;
  std::mutex mutex_;
  std::vector<CanvasEntry> survivors_;
};

inline std::string grow_item_id(const CanonicalKey* seed) { return seed ? "grow:" + seed->hex() : "grow:empty"; }
inline std::string wrap_item_id(const CanonicalKey& k) { return "wrap:" + k.hex(); }

// Tripods whose faces are all shorter than circ, filled by `seed` or empty.
inline void grow_from(CycleLevel& level, const CycleCanvas* seed, std::vector<CanvasEntry>& out) {
  const int circ = level.circ();
  if (!seed) {
    for (int k = 3; k <= circ; ++k)
      for_each_composition(circ, k, [&](const std::vector<int>& arcs) {
        if (!rotation_minimal(arcs)) return;
        if (auto c = apply_tripod(circ, {arcs, -1}, nullptr)) level.consider(*c, out);
      });
    return;
  }
  const int a = seed->circumference() - 2;
  const int rest = circ - a;
  if (a < 1 || rest < 2) return;
  for (int parts = 2; parts <= rest; ++parts)
    for_each_composition(rest, parts, [&](const std::vector<int>& tail) {
      std::vector<int> arcs{a};
      arcs.insert(arcs.end(), tail.begin(), tail.end());
      for (int offset = 0; offset < seed->circumference(); ++offset)
        if (auto c = apply_tripod(circ, {arcs, 0}, seed, {offset, false})) level.consider(*c, out);
    });
}

// New outer vertex over three consecutive boundary vertices of `inner`.
inline void wrap(CycleLevel& level, const CycleCanvas& inner, std::vector<CanvasEntry>& out) {
  const int circ = level.circ();
  if (circ < 3) return;
  for (int offset = 0; offset < circ; ++offset)
    if (auto c = apply_tripod(circ, {{1, 1, circ - 2}, 2}, &inner, {offset, false})) level.consider(*c, out);
}

}  // namespace detail

/// Candidates of circumference circ built by one tripod from smaller ones.
inline std::vector<CanvasEntry> enumerate_from_smaller(int circ, const CycleLibrary& lib,
                                                       const CycleGenOptions& opt = {}) {
  detail::CycleLevel level(circ, opt);
  std::vector<const CycleCanvas*> seeds{nullptr};
  for (const auto& [l, entries] : lib)
    if (l < circ)
      for (const auto& e : entries) seeds.push_back(&e.canvas);
  std::vector<std::vector<CanvasEntry>> found(seeds.size());
  parallel_for(seeds.size(), opt.jobs, [&](std::size_t i) { detail::grow_from(level, seeds[i], found[i]); });
  for (auto& f : found) level.finish_item("", f);
  return level.take_sorted();
}

/// Closure of `seeds` under wrapping with consecutive tripods; contains seeds.
inline std::vector<CanvasEntry> consecutive_tripod_closure(int circ, const std::vector<CanvasEntry>& seeds,
                                                           const CycleGenOptions& opt = {}) {
  detail::CycleLevel level(circ, opt);
  level.preload(seeds);
  std::size_t start = 0;
  for (;;) {
    auto pending = level.survivors_from(start);
    if (pending.empty()) break;
    start += pending.size();
    std::vector<std::vector<CanvasEntry>> found(pending.size());
    parallel_for(pending.size(), opt.jobs, [&](std::size_t i) { detail::wrap(level, pending[i].canvas, found[i]); });
    for (auto& f : found) level.finish_item("", f);
  }
  return level.take_sorted();
}

/// Both phases for one circumference, resumable: work items listed in
/// progress.done are skipped and progress.survivors are taken as found.
inline std::vector<CanvasEntry> generate_cycle_level(int circ, const CycleLibrary& lib, const CycleGenOptions& opt,
                                                     const LevelProgress& progress = {}) {
  detail::CycleLevel level(circ, opt);
  level.preload(progress.survivors);

  struct Seed {
    const CycleCanvas* canvas;
    std::string id;
  };
  std::vector<Seed> seeds;
  if (!progress.done.count(detail::grow_item_id(nullptr))) seeds.push_back({nullptr, detail::grow_item_id(nullptr)});
  for (const auto& [l, entries] : lib) {
    if (l >= circ) continue;
    for (const auto& e : entries) {
      auto id = detail::grow_item_id(&e.key);
      if (!progress.done.count(id)) seeds.push_back({&e.canvas, id});
    }
  }
  parallel_for(seeds.size(), opt.jobs, [&](std::size_t i) {
    std::vector<CanvasEntry> found;
    detail::grow_from(level, seeds[i].canvas, found);
    level.finish_item(seeds[i].id, found);
  });

  std::set<std::string> wrapped;
  for (;;) {
    std::vector<CanvasEntry> pending;
    for (auto& e : level.survivors_from(0)) {
      auto id = detail::wrap_item_id(e.key);
      if (progress.done.count(id) || wrapped.count(id)) continue;
      wrapped.insert(id);
      pending.push_back(std::move(e));
    }
    if (pending.empty()) break;
    parallel_for(pending.size(), opt.jobs, [&](std::size_t i) {
      std::vector<CanvasEntry> found;
      detail::wrap(level, pending[i].canvas, found);
      level.finish_item(detail::wrap_item_id(pending[i].key), found);
    });
  }
  return level.take_sorted();
}

/// Levels 3..max_circ in order, each built from the complete smaller ones.
inline CycleLibrary enumerate_all(int max_circ, const CycleGenOptions& opt = {}) {
  if (max_circ < 3) throw std::invalid_argument("enumerate_all: circumference must be at least 3");
  CycleLibrary lib;
  for (int l = 3; l <= max_circ; ++l) lib[l] = generate_cycle_level(l, lib, opt);
  return lib;
}

}  // namespace listcrit
