#include <gtest/gtest.h>

#include <random>

#include "listcrit/colorability.hpp"
#include "listcrit/oracle.hpp"
#include "test_support.hpp"

using namespace listcrit;
using namespace testing_support;

namespace {

std::int64_t brute_parity(const Orientation& o) {
  const auto& arcs = o.arcs();
  const int m = static_cast<int>(arcs.size());
  std::int64_t total = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> bal(o.graph().order(), 0);
    int count = 0;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) {
        ++bal[arcs[i].first];
        --bal[arcs[i].second];
        ++count;
      }
    if (std::all_of(bal.begin(), bal.end(), [](int b) { return b == 0; })) total += count % 2 ? -1 : 1;
  }
  return total;
}

Orientation orient(const Graph& g, std::initializer_list<Edge> arcs) { return Orientation(g, std::vector<Edge>(arcs)); }

Orientation random_orientation(const Graph& g, std::mt19937& rng) {
  std::vector<Edge> arcs;
  for (auto [u, v] : g.edges()) arcs.push_back(rng() % 2 ? Edge{u, v} : Edge{v, u});
  return Orientation(g, arcs);
}

Graph random_graph_with_edges(int n, int m, std::mt19937& rng) {
  std::vector<Edge> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  Graph g(n);
  for (int i = 0; i < m && i < static_cast<int>(all.size()); ++i) g.add_edge(all[i].first, all[i].second);
  return g;
}

SizeFunction example1_sizes() { return SizeFunction({3, 3, 2, 2, 2, 5}); }

}  // namespace

TEST(Residual, Examples) {
  auto w = wheel(5).abstract();
  SizeFunction five(6, 5);
  auto same = residual_sizes(w, {}, five);
  EXPECT_EQ(same.sizes, five);
  std::vector<Vertex> rim{0, 1, 2, 3, 4};
  auto hub = residual_sizes(w, rim, five);
  ASSERT_EQ(hub.graph.order(), 1);
  EXPECT_EQ(hub.sizes[0], 0);
  EXPECT_EQ(hub.original, std::vector<Vertex>{5});
}

TEST(Parity, Examples) {
  EXPECT_EQ(eulerian_parity_difference(Orientation(Graph(3), {})), 1);
  auto k3 = cycle_graph(3);
  EXPECT_EQ(eulerian_parity_difference(orient(k3, {{0, 1}, {1, 2}, {2, 0}})), 0);
  auto c4 = cycle_graph(4);
  EXPECT_EQ(eulerian_parity_difference(orient(c4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})), 2);
}

TEST(Parity, MatchesSubsetEnumeration) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int m = static_cast<int>(rng() % 13);
    auto g = random_graph_with_edges(n, m, rng);
    auto o = random_orientation(g, rng);
    EXPECT_EQ(eulerian_parity_difference(o), brute_parity(o)) << "trial " << trial;
  }
}

TEST(Orientation, RealizesOutdegrees) {
  auto g = complete_graph(5);
  std::vector<int> t{2, 2, 2, 2, 2};
  auto o = orientation_with_outdegrees(g, t);
  ASSERT_TRUE(o.has_value());
  for (int v = 0; v < 5; ++v) EXPECT_EQ(o->outdegree(v), 2);
  std::vector<int> bad{4, 4, 0, 1, 1};
  EXPECT_FALSE(orientation_with_outdegrees(g, bad).has_value());
}

TEST(AlonTarsi, Examples) {
  EXPECT_TRUE(alon_tarsi_certify(Graph(1), SizeFunction(1, 1)));
  EXPECT_TRUE(alon_tarsi_certify(cycle_graph(4), SizeFunction(4, 2)));
  EXPECT_FALSE(alon_tarsi_certify(cycle_graph(3), SizeFunction(3, 2)));
  EXPECT_FALSE(alon_tarsi_certify(wheel(5).abstract(), example1_sizes()));
}

TEST(AlonTarsi, WitnessRespectsBudgets) {
  auto g = wheel(6).abstract();
  SizeFunction s(7, 3);
  s[6] = 4;
  auto o = alon_tarsi_witness(g, s);
  ASSERT_TRUE(o.has_value());
  for (int v = 0; v < g.order(); ++v) EXPECT_LE(o->outdegree(v), s[v] - 1);
  EXPECT_NE(eulerian_parity_difference(*o), 0);
}

TEST(AlonTarsi, CutoffMakesLargeInstancesInconclusive) {
  auto g = complete_graph(8);
  SizeFunction s(8, 8);
  AlonTarsiOptions tight{.edge_cutoff = 10};
  EXPECT_TRUE(alon_tarsi_certify(g, s));  // peels completely
  SizeFunction s7(8, 7);
  EXPECT_FALSE(alon_tarsi_certify(g, s7, tight));
}

TEST(AlonTarsi, ExampleOneWheelIsColorableNonetheless) {
  auto g = wheel(5).abstract();
  EXPECT_TRUE(exactly_s_colorable(g, example1_sizes()));
}

TEST(Greedy, Examples) {
  auto w = wheel(5).abstract();
  SizeFunction roomy(6, 0);
  for (int v = 0; v < 6; ++v) roomy[v] = w.degree(v) + 1;
  EXPECT_TRUE(greedy_certify(w, roomy));

  auto edge = graph_from(2, {{0, 1}});
  EXPECT_TRUE(greedy_certify(edge, SizeFunction({1, 2})));
}

TEST(Greedy, PathWithUnitEndsIsNotColorable) {
  // v - u - w with s = (1, 2, 1): the oracle finds lists {a}, {a, b}, {b}.
  auto path = graph_from(3, {{0, 1}, {1, 2}});
  SizeFunction s({1, 2, 1});
  EXPECT_FALSE(exactly_s_colorable(path, s));
  EXPECT_FALSE(greedy_certify(path, s));
  EXPECT_FALSE(alon_tarsi_certify(path, s));
}

TEST(Greedy, PairRuleColorsNonadjacentNeighbors) {
  // Hub with three leaves: the pair rule keeps two colors' worth at the hub.
  auto star = graph_from(4, {{0, 1}, {0, 2}, {0, 3}});
  SizeFunction s({3, 2, 2, 2});
  EXPECT_TRUE(exactly_s_colorable(star, s));
  EXPECT_TRUE(greedy_certify(star, s));
}

TEST(Greedy, NonpositiveSizeFails) {
  EXPECT_FALSE(greedy_certify(Graph(1), SizeFunction({0})));
  EXPECT_FALSE(alon_tarsi_certify(Graph(1), SizeFunction({0})));
}

TEST(Soundness, CertifiersAgreeWithRandomListsOracle) {
  std::mt19937 rng(3);
  int certified = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    auto g = random_graph_with_edges(n, static_cast<int>(rng() % (n * (n - 1) / 2 + 1)), rng);
    SizeFunction s(n, 0);
    int total = 0;
    for (int v = 0; v < n; ++v) total += s[v] = 1 + static_cast<int>(rng() % 4);
    const bool greedy = greedy_certify(g, s);
    const bool at = alon_tarsi_certify(g, s);
    if (!greedy && !at) continue;
    ++certified;
    for (int k = 0; k < 200; ++k) ASSERT_TRUE(oracle_exact_colorable(g, random_lists(s, total, rng)));
    if (n <= 5) EXPECT_TRUE(exactly_s_colorable(g, s));
  }
  EXPECT_GT(certified, 50);
}

TEST(SpecialConfigs, Examples) {
  EXPECT_TRUE(known_special_configs(wheel(5).abstract(), example1_sizes()));
  EXPECT_TRUE(known_special_configs(fan4(), SizeFunction({4, 2, 2, 2, 2})));
  EXPECT_FALSE(known_special_configs(cycle_graph(3), SizeFunction(3, 2)));
  // Separated 3s on the rim still hide a fan along the rim path 2-3-4-0.
  EXPECT_TRUE(known_special_configs(wheel(5).abstract(), SizeFunction({3, 2, 3, 2, 2, 5})));
  EXPECT_FALSE(known_special_configs(wheel(5).abstract(), SizeFunction({2, 2, 2, 2, 2, 5})));
  // Residual sizes: an outside neighbor costs one color.
  auto g = fan4();
  Graph bigger(6);
  for (auto [u, v] : g.edges()) bigger.add_edge(u, v);
  bigger.add_edge(1, 5);
  EXPECT_FALSE(known_special_configs(bigger, SizeFunction({4, 2, 2, 2, 2, 9})));
  EXPECT_TRUE(known_special_configs(bigger, SizeFunction({4, 3, 2, 2, 2, 9})));
}

TEST(SpecialConfigs, WheelIsColorableForDominatingSizes) {
  auto w = wheel(5).abstract();
  EXPECT_TRUE(exactly_s_colorable(w, SizeFunction({3, 3, 2, 2, 2, 5})));
  EXPECT_TRUE(exactly_s_colorable(w, SizeFunction({3, 3, 3, 2, 2, 5})));
  EXPECT_FALSE(exactly_s_colorable(w, SizeFunction({2, 2, 2, 2, 2, 5})));
}

TEST(SpecialConfigs, FanIsReducibleButNotColorable) {
  // H = K - wx: whenever H is colorable, so is K. Checked for the published
  // sizes and for sizes dominating them.
  auto k = fan4();
  auto h = graph_from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}});
  for (std::vector<int> sizes : {std::vector<int>{4, 2, 2, 2, 2}, {5, 2, 2, 2, 2}, {4, 3, 2, 2, 2},
                                 {4, 2, 3, 2, 2}, {4, 2, 2, 3, 2}, {5, 3, 3, 2, 2}}) {
    bool ok = for_each_list_assignment(sizes, [&](const ListAssignment& l) {
      return !oracle_exact_colorable(h, l) || oracle_exact_colorable(k, l);
    });
    EXPECT_TRUE(ok) << "sizes starting " << sizes[0] << sizes[1] << sizes[2];
  }
  EXPECT_FALSE(exactly_s_colorable(k, SizeFunction({4, 2, 2, 2, 2})));
}

TEST(Reducibility, Examples) {
  EXPECT_FALSE(reducibility_search(Graph(0), SizeFunction()).reducible());
  auto v = reducibility_search(fan4(), SizeFunction({4, 2, 2, 2, 2}));
  EXPECT_TRUE(v.reducible());
  EXPECT_EQ(v.witness.rfind("special:fan", 0), 0u);
  EXPECT_FALSE(reducibility_search(Graph(1), SizeFunction({0})).reducible());
}

TEST(Reducibility, ShrinkingLoopFindsColorableRemainder) {
  // A triangle with sizes 2 blocks Alon-Tarsi; a far-away pendant vertex
  // with size 1 is attached to nothing and certifies on the second round.
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  FilterOptions opt;
  opt.greedy_precheck = false;
  opt.greedy_in_loop = false;
  auto v = reducibility_search(g, SizeFunction({2, 2, 2, 1}), opt);
  EXPECT_TRUE(v.reducible());
  EXPECT_EQ(v.certified, std::vector<Vertex>{3});
}

TEST(Filter, Examples) {
  auto w = wheel(5);
  std::vector<Vertex> rim{0, 1, 2, 3, 4};
  EXPECT_FALSE(criticality_filter(w.abstract(), rim, 5).reducible());

  auto c5 = cycle_graph(5);
  auto bare = criticality_filter(c5, rim, 5);
  EXPECT_TRUE(bare.reducible());

  Graph four(6);
  for (auto [u, v] : c5.edges()) four.add_edge(u, v);
  for (int i = 0; i < 4; ++i) four.add_edge(5, i);
  auto v = criticality_filter(four, rim, 5);
  EXPECT_TRUE(v.reducible());
  EXPECT_EQ(v.certified, std::vector<Vertex>{5});
}

TEST(Oracle, ColorableExamples) {
  auto k3 = complete_graph(3);
  EXPECT_FALSE(oracle_exact_colorable(k3, {{1, 2}, {1, 2}, {1, 2}}));
  EXPECT_TRUE(oracle_exact_colorable(k3, {{1, 2}, {1, 2}, {1, 3}}));
  auto c4 = cycle_graph(4);
  EXPECT_TRUE(exactly_s_colorable(c4, SizeFunction(4, 2)));
  EXPECT_THROW(oracle_exact_colorable(Graph(21), ListAssignment(21)), std::length_error);
}

TEST(Oracle, CriticalExamples) {
  auto w = wheel(5).abstract();
  std::vector<Vertex> rim{0, 1, 2, 3, 4};
  std::vector<Edge> rim_edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  SizeFunction s(6, 0);
  s[5] = 5;
  EXPECT_TRUE(oracle_exact_critical(w, rim, rim_edges, s, 5));
  EXPECT_FALSE(oracle_exact_critical(cycle_graph(5), rim, rim_edges, SizeFunction(5, 0), 5));

  auto k7 = complete_graph(7);
  std::vector<Vertex> tri{0, 1, 2};
  std::vector<Edge> tri_edges{{0, 1}, {1, 2}, {0, 2}};
  SizeFunction s7(7, 5);
  EXPECT_TRUE(oracle_exact_critical(k7, tri, tri_edges, s7, 7));
}

TEST(Oracle, FourNeighborHubIsNotCritical) {
  Graph four(6);
  for (auto [u, v] : cycle_graph(5).edges()) four.add_edge(u, v);
  for (int i = 0; i < 4; ++i) four.add_edge(5, i);
  std::vector<Vertex> rim{0, 1, 2, 3, 4};
  std::vector<Edge> rim_edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  SizeFunction s(6, 0);
  s[5] = 5;
  EXPECT_FALSE(oracle_exact_critical(four, rim, rim_edges, s, 6));
}

namespace {

// Definition-level check over every list assignment from the palette and
// every coloring of T from the palette plus |T| extra colors.
bool naive_critical(const Graph& g, int t_count, const std::vector<Edge>& t_edges, const std::vector<int>& sizes,
                    int palette) {
  const int n = g.order();
  std::vector<std::pair<Edge, Vertex>> deletions;
  for (Edge e : g.edges())
    if (std::find(t_edges.begin(), t_edges.end(), e) == t_edges.end()) deletions.push_back({e, -1});
  for (Vertex v = t_count; v < n; ++v)
    if (g.degree(v) == 0) deletions.push_back({{-1, -1}, v});
  if (deletions.empty()) return false;
  std::vector<Graph> subs;
  for (auto& [e, v] : deletions) {
    Graph h(n);
    for (Edge f : g.edges())
      if (f != e) h.add_edge(f.first, f.second);
    subs.push_back(h);
  }
  const int t_colors = palette + t_count;
  std::vector<std::vector<int>> subsets;
  for (int m = 0; m < (1 << palette); ++m) {
    std::vector<int> l;
    for (int c = 0; c < palette; ++c)
      if (m >> c & 1) l.push_back(c);
    subsets.push_back(l);
  }
  ListAssignment lists(n);
  std::function<bool(int)> over_lists = [&](int v) -> bool {
    if (v == n) {
      std::vector<char> witnessed(deletions.size(), 0);
      std::vector<int> psi(t_count, 0);
      for (;;) {
        ListAssignment l = lists;
        for (int t = 0; t < t_count; ++t) l[t] = {psi[t]};
        bool proper_t = true;
        for (Edge e : t_edges) proper_t = proper_t && psi[e.first] != psi[e.second];
        if (proper_t && !oracle_exact_colorable(g, l))
          for (std::size_t j = 0; j < deletions.size(); ++j) {
            if (witnessed[j]) continue;
            ListAssignment lj = l;
            if (deletions[j].second >= 0) lj[deletions[j].second] = {t_colors};
            witnessed[j] = oracle_exact_colorable(subs[j], lj);
          }
        int k = 0;
        while (k < t_count && ++psi[k] == t_colors) psi[k++] = 0;
        if (k == t_count) break;
      }
      return std::all_of(witnessed.begin(), witnessed.end(), [](char w) { return w; });
    }
    for (const auto& l : subsets) {
      if (static_cast<int>(l.size()) != sizes[v - t_count]) continue;
      lists[v] = l;
      if (over_lists(v + 1)) return true;
    }
    return false;
  };
  return over_lists(t_count);
}

}  // namespace

TEST(Oracle, CriticalMatchesNaiveDefinition) {
  std::mt19937 rng(11);
  int critical = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int t_count = 2 + static_cast<int>(rng() % 3);
    const int n = t_count + 1 + static_cast<int>(rng() % 2);
    const int palette = 3;
    Graph g(n);
    std::vector<Edge> t_edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng() % 3 != 0) {
          g.add_edge(u, v);
          if (v < t_count && rng() % 4 != 0) t_edges.push_back({u, v});
        }
    std::vector<int> sizes;
    SizeFunction s(n, 0);
    for (Vertex v = t_count; v < n; ++v) {
      sizes.push_back(1 + static_cast<int>(rng() % 3));
      s[v] = sizes.back();
    }
    std::vector<Vertex> tv(t_count);
    std::iota(tv.begin(), tv.end(), 0);
    const bool expected = naive_critical(g, t_count, t_edges, sizes, palette);
    critical += expected;
    EXPECT_EQ(oracle_exact_critical(g, tv, t_edges, s, palette), expected) << "trial " << trial;
  }
  EXPECT_GT(critical, 0);
}
