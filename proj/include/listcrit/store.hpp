#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycle_canvas.hpp"
#include "prism_canvas.hpp"
#include "torus.hpp"

namespace listcrit {

enum class RecordKind { Cycle, Prism, Torus };

inline const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::Cycle: return "cycle";
    case RecordKind::Prism: return "prism";
    case RecordKind::Torus: return "torus";
  }
  return "?";
}

/// One parsed record. For torus records `rotations` holds plain sorted
/// neighbor lists.
struct Record {
  RecordKind kind = RecordKind::Cycle;
  int param = 0;
  std::vector<std::vector<Vertex>> boundaries;
  RotationSystem rotations;
  std::string key;
};

namespace detail {

inline void write_vertices(std::ostream& os, std::span<const Vertex> vs) {
  for (Vertex v : vs) os << ' ' << v;
}

inline std::string format_record(RecordKind kind, int m, int param, const std::vector<std::vector<Vertex>>& boundaries,
                                 const RotationSystem& rot, const std::string& key) {
  std::ostringstream os;
  os << to_string(kind) << ' ' << rot.size() << ' ' << m << ' ' << param << '\n';
  for (const auto& b : boundaries) {
    os << "boundary:";
    write_vertices(os, b);
    os << '\n';
  }
  for (std::size_t v = 0; v < rot.size(); ++v) {
    os << "rot " << v << ':';
    write_vertices(os, rot[v]);
    os << '\n';
  }
  os << "key: " << key << '\n';
  return os.str();
}

}  // namespace detail

/// Record of the canonical representative of c.
inline std::string serialize(const CycleCanvas& c) {
  if (c.order() == 0) throw std::invalid_argument("serialize: empty canvas");
  auto form = cycle_canonical_form(c);
  auto rep = canonical_cycle_canvas(c, form);
  return detail::format_record(RecordKind::Cycle, rep.graph.size(), rep.circumference(), {rep.boundary},
                               rep.graph.rotations(), form.key.hex());
}

inline std::string serialize(const PrismCanvas& pc) {
  if (pc.order() == 0) throw std::invalid_argument("serialize: empty canvas");
  auto form = prism_canonical_form(pc);
  auto rep = canonical_prism_canvas(pc, form);
  std::vector<Vertex> t1(rep.t1.begin(), rep.t1.end()), t2(rep.t2.begin(), rep.t2.end());
  return detail::format_record(RecordKind::Prism, rep.graph.size(), spacing(rep), {t1, t2}, rep.graph.rotations(),
                               form.form.key.hex());
}

/// Torus candidates carry no embedding; `param` is the spacing of the source.
inline std::string serialize(const TorusCandidate& t, int param) {
  if (t.graph.order() == 0) throw std::invalid_argument("serialize: empty graph");
  const auto lab = canonical_labeling(t.graph);
  const Graph g = t.graph.relabeled(lab.perm);
  RotationSystem rot(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    rot[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    std::sort(rot[v].begin(), rot[v].end());
  }
  return detail::format_record(RecordKind::Torus, g.size(), param, {{}}, rot, graph_key(g));
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(const std::string& text, std::string source) : in_(text), source_(std::move(source)) {}

  // Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }
  std::string expect(const char* what) {
    std::string line;
    if (!next(line)) fail(std::string("unexpected end of input, expected ") + what);
    return line;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::runtime_error(source_ + ":" + std::to_string(line_no_) + ": " + why);
  }

 private:
  std::istringstream in_;
  std::string source_;
  int line_no_ = 0;
};

inline std::vector<Vertex> parse_vertex_list(LineReader& r, const std::string& rest, int n) {
  std::istringstream is(rest);
  std::vector<Vertex> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      r.fail("bad vertex '" + tok + "'");
    }
    if (used != tok.size() || v < 0 || v >= n) r.fail("bad vertex '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string after_prefix(LineReader& r, const std::string& line, const std::string& prefix) {
  if (line.rfind(prefix, 0) != 0) r.fail("expected '" + prefix + "'");
  return line.substr(prefix.size());
}

}  // namespace detail

/// Parses every record of `text`. Throws std::runtime_error naming the line
/// on malformed input.
inline std::vector<Record> parse_records(const std::string& text, const std::string& source = "<input>") {
  detail::LineReader r(text, source);
  std::vector<Record> out;
  std::string line;
  while (r.next(line)) {
    Record rec;
    std::istringstream head(line);
    std::string kind, extra;
    int n = -1, m = -1;
    if (!(head >> kind >> n >> m >> rec.param) || (head >> extra) || n < 1 || m < 0)
      r.fail("expected header 'kind n m param'");
    int boundary_lines = 1;
    if (kind == "cycle") {
      rec.kind = RecordKind::Cycle;
    } else if (kind == "prism") {
      rec.kind = RecordKind::Prism;
      boundary_lines = 2;
    } else if (kind == "torus") {
      rec.kind = RecordKind::Torus;
    } else {
      r.fail("unknown record kind '" + kind + "'");
    }
    for (int i = 0; i < boundary_lines; ++i)
      rec.boundaries.push_back(detail::parse_vertex_list(r, detail::after_prefix(r, r.expect("boundary"), "boundary:"), n));
    rec.rotations.resize(n);
    int half_edges = 0;
    for (int v = 0; v < n; ++v) {
      const auto l = r.expect("rotation line");
      const std::string prefix = "rot " + std::to_string(v) + ":";
      rec.rotations[v] = detail::parse_vertex_list(r, detail::after_prefix(r, l, prefix), n);
      half_edges += static_cast<int>(rec.rotations[v].size());
    }
    if (half_edges != 2 * m) r.fail("edge count does not match header");
    std::string key = detail::after_prefix(r, r.expect("key line"), "key:");
    key.erase(0, key.find_first_not_of(' '));
    rec.key = key;
    out.push_back(std::move(rec));
  }
  return out;
}

namespace detail {

inline void check_key(const Record& r, const std::string& computed) {
  if (!r.key.empty() && r.key != computed)
    throw std::runtime_error("record key " + r.key + " does not match its graph (" + computed + ")");
}

inline Triangle as_triangle(const std::vector<Vertex>& b) {
  if (b.size() != 3) throw std::runtime_error("prism boundary must have three vertices");
  return {b[0], b[1], b[2]};
}

}  // namespace detail

inline CycleCanvas to_cycle_canvas(const Record& r) {
  if (r.kind != RecordKind::Cycle) throw std::runtime_error("record is not a cycle canvas");
  const auto& b = r.boundaries.at(0);
  if (b.size() < 3) throw std::runtime_error("cycle boundary is too short");
  try {
    PlaneGraph g(r.rotations, {b[0], b[1]});
    auto c = make_cycle_canvas(std::move(g));
    if (c.boundary != b) throw std::runtime_error("boundary line is not the outer face walk");
    if (c.circumference() != r.param) throw std::runtime_error("circumference does not match header");
    detail::check_key(r, cycle_key(c).hex());
    return c;
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid cycle canvas: ") + e.what());
  }
}

inline PrismCanvas to_prism_canvas(const Record& r) {
  if (r.kind != RecordKind::Prism) throw std::runtime_error("record is not a prism canvas");
  try {
    auto pc = make_prism_canvas(PlaneGraph(r.rotations), detail::as_triangle(r.boundaries.at(0)),
                                detail::as_triangle(r.boundaries.at(1)));
    if (spacing(pc) != r.param) throw std::runtime_error("spacing does not match header");
    detail::check_key(r, prism_key(pc).hex());
    return pc;
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid prism canvas: ") + e.what());
  }
}

inline Graph to_torus_graph(const Record& r) {
  if (r.kind != RecordKind::Torus) throw std::runtime_error("record is not a torus candidate");
  Graph g(static_cast<int>(r.rotations.size()));
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : r.rotations[v]) {
      if (u == v) throw std::runtime_error("torus record has a loop");
      if (std::find(r.rotations[u].begin(), r.rotations[u].end(), v) == r.rotations[u].end())
        throw std::runtime_error("torus record adjacency is not symmetric");
      if (u > v) {
        if (g.adjacent(u, v)) throw std::runtime_error("torus record has a repeated edge");
        g.add_edge(v, u);
      }
    }
  detail::check_key(r, graph_key(g));
  return g;
}

/// Canonical key of a record's graph, recomputed.
inline std::string record_key(const Record& r) {
  switch (r.kind) {
    case RecordKind::Cycle: return cycle_key(to_cycle_canvas(r)).hex();
    case RecordKind::Prism: return prism_key(to_prism_canvas(r)).hex();
    case RecordKind::Torus: return graph_key(to_torus_graph(r));
  }
  return {};
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Writes through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& p, const std::string& text) {
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, p);
}

/// Record sets per (kind, param) with insert-if-absent by key.
class DedupStore {
 public:
  bool insert(RecordKind kind, int param, const std::string& key, std::string record) {
    std::lock_guard lock(mutex_);
    auto& bucket = classes_[{kind, param}];
    return bucket.emplace(key, std::move(record)).second;
  }

  std::size_t count(RecordKind kind, int param) const {
    std::lock_guard lock(mutex_);
    auto it = classes_.find({kind, param});
    return it == classes_.end() ? 0 : it->second.size();
  }

  /// Records of one class in key order.
  std::string text(RecordKind kind, int param) const {
    std::lock_guard lock(mutex_);
    std::string out;
    auto it = classes_.find({kind, param});
    if (it != classes_.end())
      for (const auto& [k, rec] : it->second) out += rec;
    return out;
  }

  std::vector<std::pair<RecordKind, int>> classes() const {
    std::lock_guard lock(mutex_);
    std::vector<std::pair<RecordKind, int>> out;
    for (const auto& [c, b] : classes_) out.push_back(c);
    return out;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<RecordKind, int>, std::map<std::string, std::string>> classes_;
};

inline std::string class_file_name(RecordKind kind, int param) {
  return std::string(kind == RecordKind::Cycle ? "cycles-" : kind == RecordKind::Prism ? "prisms-" : "torus-") +
         std::to_string(param) + ".txt";
}

/// Reads every `cycles-*.txt` / `prisms-*.txt` in dir, keyed by parameter.
inline std::map<int, std::vector<Record>> read_class_files(const std::filesystem::path& dir, RecordKind kind) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::map<int, std::vector<Record>> out;
  const std::string prefix = kind == RecordKind::Cycle ? "cycles-" : kind == RecordKind::Prism ? "prisms-" : "torus-";
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".txt") continue;
    const auto middle = name.substr(prefix.size(), name.size() - prefix.size() - 4);
    if (middle.empty() || middle.find_first_not_of("0123456789") != std::string::npos) continue;
    const int param = std::stoi(middle);
    auto recs = parse_records(read_file(entry.path()), entry.path().string());
    for (const auto& r : recs)
      if (r.kind != kind || r.param != param)
        throw std::runtime_error(entry.path().string() + ": record does not belong to this file");
    out[param] = std::move(recs);
  }
  return out;
}

inline CycleLibrary load_cycle_library(const std::filesystem::path& dir) {
  CycleLibrary lib;
  for (auto& [l, recs] : read_class_files(dir, RecordKind::Cycle)) {
    auto& level = lib[l];
    for (const auto& r : recs) {
      auto c = to_cycle_canvas(r);
      level.push_back({cycle_key(c), std::move(c)});
    }
    std::sort(level.begin(), level.end(), [](const CanvasEntry& a, const CanvasEntry& b) { return a.key < b.key; });
  }
  return lib;
}

inline PrismLibrary load_prism_library(const std::filesystem::path& dir) {
  PrismLibrary lib;
  for (auto& [d, recs] : read_class_files(dir, RecordKind::Prism)) {
    auto& bucket = lib[d];
    for (const auto& r : recs) {
      auto pc = to_prism_canvas(r);
      bucket.push_back({prism_key(pc), std::move(pc)});
    }
    std::sort(bucket.begin(), bucket.end(), [](const PrismEntry& a, const PrismEntry& b) { return a.key < b.key; });
  }
  return lib;
}

/// `param<TAB>count<TAB>maxV` per class file in dir; maxV is `-` for an
/// empty class.
inline std::string stats_tsv(const std::filesystem::path& dir) {
  std::ostringstream os;
  for (RecordKind kind : {RecordKind::Cycle, RecordKind::Prism})
    for (const auto& [param, recs] : read_class_files(dir, kind)) {
      std::set<std::string> keys;
      std::size_t max_v = 0;
      for (const auto& r : recs) {
        keys.insert(r.key);
        max_v = std::max(max_v, r.rotations.size());
      }
      os << param << '\t' << keys.size() << '\t';
      if (keys.empty())
        os << '-';
      else
        os << max_v;
      os << '\n';
    }
  return os.str();
}

/// Append-only `done <item>` log.
class Journal {
 public:
  explicit Journal(std::filesystem::path path) : path_(std::move(path)) {}

  /// Reads an existing journal; refuses anything that is not a complete
  /// `done <item>` line.
  std::set<std::string> load() const {
    std::set<std::string> done;
    if (!std::filesystem::exists(path_)) return done;
    const auto text = read_file(path_);
    if (!text.empty() && text.back() != '\n') throw std::runtime_error("corrupt journal " + path_.string() + ": truncated last line");
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (line.rfind("done ", 0) != 0 || line.size() == 5 || line.find_first_of(" \t", 5) != std::string::npos)
        throw std::runtime_error("corrupt journal " + path_.string() + ":" + std::to_string(no));
      done.insert(line.substr(5));
    }
    return done;
  }

  void append(const std::string& item) {
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out << "done " << item << '\n';
    if (!out.flush()) throw std::runtime_error("cannot append to journal " + path_.string());
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
};

struct CycleRunOptions {
  CycleGenOptions gen{};
  bool resume = false;
  /// Receives discarded canvases as `key<TAB>witness` lines when set.
  std::ostream* discard_log = nullptr;
  /// Stops with RunInterrupted once this many items are journaled; 0 runs to
  /// the end.
  std::size_t item_budget = 0;
};

struct RunInterrupted : std::runtime_error {
  RunInterrupted() : std::runtime_error("run interrupted") {}
};

/// Generates levels 3..max_circ into dir with a journal. Finished items are
/// recorded with their survivors in `cycles-<l>.partial`, finished levels in
/// `cycles-<l>.txt`; a resumed run skips both.
inline CycleLibrary run_cycle_generation(int max_circ, const std::filesystem::path& dir, const CycleRunOptions& opt) {
  if (max_circ < 3) throw std::runtime_error("--max-circ must be at least 3");
  std::filesystem::create_directories(dir);
  Journal journal(dir / "journal.txt");
  if (!opt.resume && std::filesystem::exists(journal.path()))
    throw std::runtime_error(dir.string() + " already holds a run; pass --resume or use an empty directory");
  const auto done = journal.load();
  CycleLibrary lib;
  std::mutex log_mutex;
  std::size_t items_done = 0;
  for (int l = 3; l <= max_circ; ++l) {
    const std::string level_id = "cycles/" + std::to_string(l);
    const auto final_path = dir / class_file_name(RecordKind::Cycle, l);
    const auto partial_path = dir / ("cycles-" + std::to_string(l) + ".partial");
    if (done.count(level_id)) {
      if (!std::filesystem::exists(final_path))
        throw std::runtime_error("journal lists " + level_id + " but " + final_path.string() + " is missing");
      lib[l] = load_cycle_library(dir).at(l);
      continue;
    }
    LevelProgress progress;
    const std::string item_prefix = level_id + "/";
    std::set<std::string> wanted;
    for (const auto& d : done)
      if (d.rfind(item_prefix, 0) == 0) wanted.insert(d.substr(item_prefix.size()));
    if (!wanted.empty()) {
      if (!std::filesystem::exists(partial_path))
        throw std::runtime_error("journal lists items of " + level_id + " but " + partial_path.string() + " is missing");
      // Blocks `item <id> <count>` followed by count records; a torn tail is
      // ignored as long as every journaled item is complete.
      const auto text = read_file(partial_path);
      std::istringstream in(text);
      std::string line;
      std::set<std::string> found;
      while (std::getline(in, line)) {
        std::istringstream head(line);
        std::string tag, id;
        std::size_t count = 0;
        if (!(head >> tag >> id >> count) || tag != "item") break;
        std::string body;
        bool torn = false;
        for (std::size_t i = 0; i < count && !torn;) {
          std::string rec_line;
          if (!std::getline(in, rec_line)) {
            torn = true;
            break;
          }
          body += rec_line + '\n';
          if (rec_line.rfind("key:", 0) == 0) ++i;
        }
        if (torn) break;
        if (!wanted.count(id)) continue;
        for (const auto& r : parse_records(body, partial_path.string())) {
          auto c = to_cycle_canvas(r);
          progress.survivors.push_back({cycle_key(c), std::move(c)});
        }
        found.insert(id);
        progress.done.insert(id);
      }
      for (const auto& id : wanted)
        if (!found.count(id)) throw std::runtime_error("journal lists " + item_prefix + id + " but its records are missing");
    }
    CycleGenOptions gen = opt.gen;
    std::ofstream partial(partial_path, std::ios::app | std::ios::binary);
    std::mutex partial_mutex;
    gen.on_item_done = [&](const std::string& id, const std::vector<CanvasEntry>& items) {
      std::lock_guard lock(partial_mutex);
      if (opt.item_budget && items_done == opt.item_budget) throw RunInterrupted();
      partial << "item " << id << ' ' << items.size() << '\n';
      for (const auto& e : items) partial << serialize(e.canvas);
      partial.flush();
      journal.append(item_prefix + id);
      ++items_done;
    };
    if (opt.discard_log)
      gen.on_discard = [&](const CycleCanvas&, const CanonicalKey& k, const Verdict& v) {
        std::lock_guard lock(log_mutex);
        *opt.discard_log << "cycle\t" << l << '\t' << k.hex() << '\t' << v.witness << '\n';
      };
    lib[l] = generate_cycle_level(l, lib, gen, progress);
    partial.close();
    std::string text;
    for (const auto& e : lib[l]) text += serialize(e.canvas);
    write_file_atomic(final_path, text);
    journal.append(level_id);
    std::filesystem::remove(partial_path);
  }
  return lib;
}

inline void write_prism_library(const std::filesystem::path& dir, const PrismLibrary& lib) {
  std::filesystem::create_directories(dir);
  for (const auto& [d, entries] : lib) {
    std::string text;
    for (const auto& e : entries) text += serialize(e.canvas);
    write_file_atomic(dir / class_file_name(RecordKind::Prism, d), text);
  }
}

}  // namespace listcrit
