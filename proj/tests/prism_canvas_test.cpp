#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "listcrit/oracle.hpp"
#include "listcrit/prism_canvas.hpp"
#include "test_support.hpp"

using namespace listcrit;

namespace {

const CycleLibrary& library8() {
  static const CycleLibrary lib = enumerate_all(8);
  return lib;
}

const std::vector<PrismEntry>& candidates(int d) {
  static const std::map<int, std::vector<PrismEntry>> sets = [] {
    std::map<int, std::vector<PrismEntry>> out;
    for (int k = 0; k <= 1; ++k) out[k] = paste_into_skeletons(k, library8());
    return out;
  }();
  return sets.at(d);
}

std::set<CanonicalKey> keys_of(const std::vector<PrismEntry>& entries) {
  std::set<CanonicalKey> out;
  for (const auto& e : entries) out.insert(e.key);
  return out;
}

PrismCanvas swap_ends(const PrismCanvas& pc) { return make_prism_canvas(pc.graph, pc.t2, pc.t1); }

// Plain BFS from every vertex of a to the nearest vertex of b.
int bfs_distance(const PlaneGraph& g, const Triangle& a, const Triangle& b) {
  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue;
  for (Vertex v : a) {
    dist[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (std::find(b.begin(), b.end(), v) != b.end()) return dist[v];
    for (Vertex u : g.rotation(v))
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  return -1;
}

// Octahedron with two opposite faces as the ends.
PrismCanvas octahedron() {
  // Top 0,1,2 and bottom 3,4,5; vertex 3 below the edge 0-1 and so on.
  RotationSystem rot{{1, 2, 5, 3}, {2, 0, 3, 4}, {0, 1, 4, 5}, {0, 5, 4, 1}, {1, 3, 5, 2}, {2, 4, 3, 0}};
  return make_prism_canvas(PlaneGraph(rot), {0, 2, 1}, {3, 4, 5});
}

}  // namespace

TEST(PrismCanvas, OctahedronHasSpacingOne) {
  auto oct = octahedron();
  EXPECT_TRUE(is_spherical(oct.graph));
  EXPECT_EQ(spacing(oct), 1);
  EXPECT_EQ(boundary_vertices(oct).size(), 6u);
  EXPECT_EQ(boundary_edges(oct).size(), 6u);
}

TEST(PrismCanvas, RejectsTrianglesThatAreNotFaces) {
  auto oct = octahedron();
  EXPECT_THROW(make_prism_canvas(oct.graph, {0, 1, 2}, {3, 4, 5}), std::invalid_argument);
  EXPECT_THROW(make_prism_canvas(oct.graph, {0, 2, 1}, {0, 2, 1}), std::invalid_argument);
  EXPECT_THROW(make_prism_canvas(oct.graph, {0, 1, 4}, {3, 4, 5}), std::invalid_argument);
}

TEST(PrismKey, InvariantUnderRelabelingAndEndSwap) {
  auto oct = octahedron();
  const auto k = prism_key(oct);
  std::vector<Vertex> perm{4, 2, 0, 5, 1, 3};
  auto relabeled = make_prism_canvas(oct.graph.relabeled(perm), {perm[0], perm[2], perm[1]}, {perm[3], perm[4], perm[5]});
  EXPECT_EQ(prism_key(relabeled), k);
  EXPECT_EQ(prism_key(swap_ends(oct)), k);
  EXPECT_EQ(canonical_prism_canvas(relabeled).graph, canonical_prism_canvas(oct).graph);
}

TEST(PrismKey, CanonicalRepresentativeKeepsKey) {
  for (const auto& e : candidates(1)) {
    EXPECT_EQ(prism_key(e.canvas), e.key);
    EXPECT_EQ(canonical_prism_canvas(e.canvas).graph, e.canvas.graph);
  }
}

TEST(Skeletons, HaveRequestedSpacingAndTriangularEnds) {
  for (int d = 0; d <= 3; ++d) {
    auto sk = enumerate_skeletons(d);
    EXPECT_FALSE(sk.empty()) << d;
    std::set<CanonicalKey> keys;
    for (const auto& s : sk) {
      EXPECT_TRUE(is_spherical(s.graph));
      EXPECT_EQ(bfs_distance(s.graph, s.t1, s.t2), d);
      EXPECT_TRUE(bounds_face(s.graph, s.t1));
      EXPECT_TRUE(bounds_face(s.graph, s.t2));
      EXPECT_TRUE(keys.insert(prism_key(s)).second);
    }
  }
}

TEST(Pasting, SpacingOneCount) {
  EXPECT_EQ(candidates(1).size(), 510u);
}

TEST(Pasting, CandidateInvariants) {
  for (int d = 0; d <= 1; ++d) {
    std::set<CanonicalKey> keys;
    for (const auto& e : candidates(d)) {
      const auto& pc = e.canvas;
      EXPECT_TRUE(is_spherical(pc.graph));
      EXPECT_TRUE(bounds_face(pc.graph, pc.t1));
      EXPECT_TRUE(bounds_face(pc.graph, pc.t2));
      EXPECT_EQ(bfs_distance(pc.graph, pc.t1, pc.t2), d);
      EXPECT_FALSE(filter_prism_canvas(pc).reducible());
      EXPECT_TRUE(keys.insert(e.key).second);
    }
  }
}

TEST(Pasting, DeterministicAcrossWorkerCounts) {
  PrismGenOptions opt;
  opt.jobs = 3;
  auto parallel = paste_into_skeletons(1, library8(), opt);
  const auto& serial = candidates(1);
  ASSERT_EQ(parallel.size(), serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(parallel[i].key, serial[i].key);
    EXPECT_EQ(parallel[i].canvas.graph, serial[i].canvas.graph);
  }
}

TEST(Glue, SpacingBoundedByPartsPlusOne) {
  const auto& s0 = candidates(0);
  const auto& s1 = candidates(1);
  for (std::size_t i = 0; i < s1.size(); i += 37)
    for (const auto* other : {&s0.front().canvas, &s1[(i * 7) % s1.size()].canvas})
      for (const auto& g : glue_raw(s1[i].canvas, *other)) {
        const int sum = spacing(s1[i].canvas) + spacing(*other);
        EXPECT_GE(spacing(g), sum);
        EXPECT_LE(spacing(g), sum + 1);
      }
}

// Reversing the order maps the gluing with the mirrored second part to its
// mirror image, so the comparison is on mirror-closed key sets.
TEST(Glue, ArgumentOrderOnlySwapsEnds) {
  const auto& s1 = candidates(1);
  for (std::size_t i = 0; i < s1.size(); i += 51) {
    const auto& a = s1[i].canvas;
    const auto& b = s1[(i * 13 + 5) % s1.size()].canvas;
    std::set<CanonicalKey> forward, backward;
    for (const auto& g : glue_raw(a, b)) forward.insert({prism_key(g), prism_key(mirrored(g))});
    for (const auto& g : glue_raw(swap_ends(b), swap_ends(a))) backward.insert({prism_key(g), prism_key(mirrored(g))});
    EXPECT_EQ(forward, backward);
  }
}

TEST(Glue, SplittingAtTheSharedTriangleRecoversTheParts) {
  const auto& s0 = candidates(0);
  const auto& s1 = candidates(1);
  const auto& a = s1[3].canvas;
  const auto& b = s0[1].canvas;
  auto glued = glue_raw(a, b);
  ASSERT_FALSE(glued.empty());
  for (const auto& g : glued) {
    auto seps = separating_triangles(g);
    std::vector<Vertex> shared(a.t2.begin(), a.t2.end());
    std::sort(shared.begin(), shared.end());
    auto it = std::find_if(seps.begin(), seps.end(), [&](const Triangle& t) { return sorted_vertices(t) == shared; });
    ASSERT_NE(it, seps.end());
    auto [first, second] = split_at_triangle(g, *it);
    EXPECT_EQ(prism_key(first), prism_key(a));
    EXPECT_TRUE(prism_key(second) == prism_key(b) || prism_key(second) == prism_key(mirrored(b)));
  }
}

TEST(Glue, ClosureOverSpacingOneAddsNothing) {
  PrismLibrary lib{{0, candidates(0)}, {1, candidates(1)}};
  auto report = glue_closure(lib, 1);
  EXPECT_GT(report.gluings, 0u);
  EXPECT_TRUE(report.new_candidates.empty());
  ASSERT_FALSE(report.spacing_seen.empty());
  EXPECT_LE(report.spacing_seen.rbegin()->first, 2);
}

// Parts of a candidate cut at a separating triangle are candidates again,
// or consist of the two triangles alone.
TEST(Glue, CuttingSoundness) {
  std::set<CanonicalKey> keys = keys_of(candidates(0));
  for (const auto& k : keys_of(candidates(1))) keys.insert(k);
  std::size_t cuts = 0;
  for (int d = 0; d <= 1; ++d)
    for (const auto& e : candidates(d))
      for (const auto& t : separating_triangles(e.canvas)) {
        auto [a, b] = split_at_triangle(e.canvas, t);
        for (const auto* part : {&a, &b}) {
          ++cuts;
          const bool bare = part->graph.size() == static_cast<int>(boundary_edges(*part).size());
          EXPECT_TRUE(bare || keys.count(prism_key(*part)));
        }
      }
  EXPECT_GT(cuts, 0u);
}

TEST(Pasting, NoCriticalCanvasIsDiscarded) {
  std::vector<std::pair<PrismCanvas, bool>> small;
  PrismGenOptions opt;
  opt.on_discard = [&](const PrismCanvas& pc, const CanonicalKey&, const Verdict&) {
    if (pc.order() <= 9) small.push_back({pc, false});
  };
  for (int d = 0; d <= 1; ++d)
    for (const auto& e : paste_into_skeletons(d, library8(), opt))
      if (e.canvas.order() <= 9) small.push_back({e.canvas, true});
  int critical = 0;
  for (const auto& [pc, kept] : small) {
    const auto tv = boundary_vertices(pc);
    const int free = pc.order() - static_cast<int>(tv.size());
    const bool crit = oracle_exact_critical(pc.graph.abstract(), tv, boundary_edges(pc),
                                            SizeFunction(pc.order(), 5), std::max(5, 5 * free));
    critical += crit;
    if (crit) EXPECT_TRUE(kept) << "n=" << pc.order();
  }
  EXPECT_GT(critical, 0);
}
