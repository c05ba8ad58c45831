#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <fstream>
#include <numeric>
#include <thread>

#include <unistd.h>

#include "listcrit/store.hpp"
#include "test_support.hpp"

using namespace listcrit;
namespace fs = std::filesystem;

namespace {

const CycleLibrary& library7() {
  static const CycleLibrary lib = enumerate_all(7);
  return lib;
}

CycleCanvas wheel_canvas() { return make_cycle_canvas(testing_support::wheel(5)); }

fs::path fresh_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("listcrit_store_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

// Same canvas under a random relabeling, outer dart kept.
CycleCanvas shuffled(const CycleCanvas& c, unsigned seed) {
  std::vector<Vertex> perm(c.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  PlaneGraph g = c.graph.relabeled(perm);
  g.set_outer({perm[c.graph.outer().from], perm[c.graph.outer().to]});
  return make_cycle_canvas(std::move(g));
}

std::set<std::string> keys_in(const std::vector<CanvasEntry>& entries) {
  std::set<std::string> out;
  for (const auto& e : entries) out.insert(e.key.hex());
  return out;
}

}  // namespace

TEST(Serialize, WheelRecord) {
  const auto text = serialize(wheel_canvas());
  std::istringstream in(text);
  std::string header, boundary;
  std::getline(in, header);
  std::getline(in, boundary);
  EXPECT_EQ(header, "cycle 6 10 5");
  EXPECT_EQ(boundary, "boundary: 0 1 2 3 4");
  auto recs = parse_records(text);
  ASSERT_EQ(recs.size(), 1u);
  for (int v = 0; v < 5; ++v) {
    const auto& r = recs[0].rotations[v];
    EXPECT_NE(std::find(r.begin(), r.end(), 5), r.end());
  }
  EXPECT_EQ(recs[0].rotations[5].size(), 5u);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Serialize, RejectsEmptyInput) {
  EXPECT_THROW(serialize(CycleCanvas{}), std::invalid_argument);
  EXPECT_THROW(serialize(PrismCanvas{}), std::invalid_argument);
}

TEST(Serialize, RoundTripKeepsKeys) {
  std::size_t n = 0;
  for (const auto& [l, entries] : library7())
    for (const auto& e : entries) {
      const auto text = serialize(e.canvas);
      auto recs = parse_records(text);
      ASSERT_EQ(recs.size(), 1u);
      EXPECT_EQ(cycle_key(to_cycle_canvas(recs[0])), e.key);
      EXPECT_EQ(serialize(to_cycle_canvas(recs[0])), text);
      ++n;
    }
  EXPECT_EQ(n, 22u);
}

TEST(Serialize, RelabeledCopiesGiveTheSameText) {
  for (const auto& e : library7().at(7))
    for (unsigned seed = 1; seed <= 3; ++seed) EXPECT_EQ(serialize(shuffled(e.canvas, seed)), serialize(e.canvas));
}

TEST(Serialize, PrismAndTorusRoundTrip) {
  RotationSystem rot{{1, 2, 5, 3}, {2, 0, 3, 4}, {0, 1, 4, 5}, {0, 5, 4, 1}, {1, 3, 5, 2}, {2, 4, 3, 0}};
  auto oct = make_prism_canvas(PlaneGraph(rot), {0, 2, 1}, {3, 4, 5});
  auto recs = parse_records(serialize(oct));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].kind, RecordKind::Prism);
  EXPECT_EQ(recs[0].param, 1);
  EXPECT_EQ(recs[0].boundaries.size(), 2u);
  EXPECT_EQ(prism_key(to_prism_canvas(recs[0])), prism_key(oct));

  Graph k6(6);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) k6.add_edge(u, v);
  auto trecs = parse_records(serialize(TorusCandidate{k6, "", 0}, 2));
  ASSERT_EQ(trecs.size(), 1u);
  EXPECT_EQ(graph_key(to_torus_graph(trecs[0])), graph_key(k6));
}

TEST(Parse, RejectsMalformedRecords) {
  const auto good = serialize(wheel_canvas());
  auto mutate = [&](const std::string& from, const std::string& to) {
    auto t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_THROW(parse_records(mutate("cycle 6 10 5", "cycle 6 11 5")), std::runtime_error);
  EXPECT_THROW(parse_records(mutate("cycle", "ring")), std::runtime_error);
  EXPECT_THROW(parse_records(mutate("boundary:", "border:")), std::runtime_error);
  EXPECT_THROW(parse_records(mutate("rot 5:", "rot 6:")), std::runtime_error);
  EXPECT_THROW(parse_records(good.substr(0, good.find("key:"))), std::runtime_error);
  auto wrong_key = parse_records(mutate("key: ", "key: 00"));
  EXPECT_THROW(to_cycle_canvas(wrong_key.at(0)), std::runtime_error);
  auto wrong_circ = parse_records(mutate("cycle 6 10 5", "cycle 6 10 4"));
  EXPECT_THROW(to_cycle_canvas(wrong_circ.at(0)), std::runtime_error);
}

TEST(DedupStore, ContentsIndependentOfInsertionOrder) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& [l, entries] : library7())
    for (const auto& e : entries) items.push_back({e.key.hex(), serialize(e.canvas)});
  DedupStore forward, threaded;
  for (const auto& [k, r] : items) EXPECT_TRUE(forward.insert(RecordKind::Cycle, 7, k, r));
  for (const auto& [k, r] : items) EXPECT_FALSE(forward.insert(RecordKind::Cycle, 7, k, r));
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& [k, r] = items[(i * 5 + t) % items.size()];
        threaded.insert(RecordKind::Cycle, 7, k, r);
      }
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(threaded.count(RecordKind::Cycle, 7), items.size());
  EXPECT_EQ(threaded.text(RecordKind::Cycle, 7), forward.text(RecordKind::Cycle, 7));
}

TEST(Runs, StatsMatchSmallLevels) {
  auto dir = fresh_dir("stats");
  run_cycle_generation(7, dir, {});
  EXPECT_EQ(stats_tsv(dir), "3\t0\t-\n4\t0\t-\n5\t1\t6\n6\t4\t9\n7\t17\t11\n");
  fs::remove_all(dir);
}

TEST(Runs, ResumeAfterALevelMatchesACleanRun) {
  auto clean = fresh_dir("clean");
  auto staged = fresh_dir("staged");
  auto full = run_cycle_generation(7, clean, {});
  run_cycle_generation(6, staged, {});
  CycleRunOptions resume;
  resume.resume = true;
  auto resumed = run_cycle_generation(7, staged, resume);
  EXPECT_EQ(keys_in(resumed.at(7)), keys_in(full.at(7)));
  EXPECT_EQ(read_file(staged / "cycles-7.txt"), read_file(clean / "cycles-7.txt"));
  fs::remove_all(clean);
  fs::remove_all(staged);
}

TEST(Runs, ResumeInsideALevelSkipsFinishedItems) {
  auto clean = fresh_dir("clean2");
  auto staged = fresh_dir("staged2");
  auto full = run_cycle_generation(7, clean, {});
  CycleRunOptions interrupted;
  interrupted.item_budget = 9;
  EXPECT_THROW(run_cycle_generation(7, staged, interrupted), RunInterrupted);
  const auto journaled = Journal(staged / "journal.txt").load();
  const auto items = std::count_if(journaled.begin(), journaled.end(),
                                   [](const std::string& s) { return std::count(s.begin(), s.end(), '/') == 2; });
  EXPECT_EQ(items, 9);

  CycleRunOptions resume;
  resume.resume = true;
  resume.gen.jobs = 2;
  auto resumed = run_cycle_generation(7, staged, resume);
  for (int l = 3; l <= 7; ++l) EXPECT_EQ(keys_in(resumed.at(l)), keys_in(full.at(l))) << l;
  EXPECT_EQ(read_file(staged / "cycles-7.txt"), read_file(clean / "cycles-7.txt"));
  const auto after = Journal(staged / "journal.txt").load();
  for (const auto& item : journaled) EXPECT_TRUE(after.count(item));
  EXPECT_FALSE(fs::exists(staged / "cycles-7.partial"));
  fs::remove_all(clean);
  fs::remove_all(staged);
}

TEST(Runs, ResumeOnACompletedRunIsANoOp) {
  auto dir = fresh_dir("done");
  run_cycle_generation(6, dir, {});
  const auto journal = read_file(dir / "journal.txt");
  CycleRunOptions resume;
  resume.resume = true;
  run_cycle_generation(6, dir, resume);
  EXPECT_EQ(read_file(dir / "journal.txt"), journal);
  fs::remove_all(dir);
}

TEST(Runs, RefusesBadState) {
  auto dir = fresh_dir("bad");
  run_cycle_generation(6, dir, {});
  CycleRunOptions resume;
  resume.resume = true;
  EXPECT_THROW(run_cycle_generation(6, dir, {}), std::runtime_error);

  fs::remove(dir / "cycles-6.txt");
  EXPECT_THROW(run_cycle_generation(6, dir, resume), std::runtime_error);

  std::ofstream(dir / "journal.txt", std::ios::app) << "garbage line\n";
  EXPECT_THROW(run_cycle_generation(6, dir, resume), std::runtime_error);
  std::ofstream(dir / "journal.txt", std::ios::trunc) << "done cycles/3";
  EXPECT_THROW(run_cycle_generation(6, dir, resume), std::runtime_error);
  fs::remove_all(dir);
}
