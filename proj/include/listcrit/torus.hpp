#pragma once

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorability.hpp"
#include "isomorphism.hpp"
#include "prism_canvas.hpp"
#include "work_queue.hpp"

namespace listcrit {

struct NamedGraph {
  std::string name;
  Graph graph;
};

struct ObstructionSet {
  std::vector<NamedGraph> obstructions;
  Graph k7;
};

/// Parses `name n m` blocks followed by m lines `u v`. Blank lines and lines
/// starting with '#' are ignored. An optional last line `crc32 <hex>` is
/// checked against the CRC-32 of all preceding bytes.
inline std::vector<NamedGraph> parse_graph_blocks(const std::string& text) {
  std::vector<NamedGraph> out;
  std::istringstream in(text);
  std::string line;
  std::size_t consumed = 0;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("obstruction data line " + std::to_string(line_no) + ": " + why);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t start = consumed;
      consumed += line.size() + 1;
      if (line.rfind("crc32 ", 0) == 0) {
        const auto expect = std::stoul(line.substr(6), nullptr, 16);
        const auto got = crc32(0L, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(start));
        if (expect != got) fail("checksum mismatch");
        continue;
      }
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  };
  while (next_line()) {
    std::istringstream head(line);
    std::string name;
    int n = -1, m = -1;
    if (!(head >> name >> n >> m) || n < 0 || m < 0) fail("expected `name n m`");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
      if (!next_line()) fail("graph " + name + " ends early");
      std::istringstream es(line);
      int u = -1, v = -1;
      if (!(es >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) fail("bad edge in " + name);
      try {
        g.add_edge(u, v);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    out.push_back({name, std::move(g)});
  }
  return out;
}

inline std::string format_graph_blocks(const std::vector<NamedGraph>& graphs) {
  std::ostringstream os;
  for (const auto& [name, g] : graphs) {
    os << name << ' ' << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  }
  std::string body = os.str();
  std::ostringstream sum;
  sum << "crc32 " << std::hex << std::setw(8) << std::setfill('0')
      << crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size())) << '\n';
  return body + sum.str();
}

/// Obstructions from text; a graph named K7 is kept apart. K6 must be present
/// with 6 vertices and 15 edges.
inline ObstructionSet obstruction_set_from(const std::vector<NamedGraph>& graphs) {
  ObstructionSet set;
  set.k7 = complete_graph(7);
  bool has_k6 = false;
  for (const auto& ng : graphs) {
    if (ng.name == "K7") {
      if (!isomorphic(ng.graph, set.k7)) throw std::runtime_error("obstruction data: K7 entry is not K7");
      continue;
    }
    if (ng.name == "K6") {
      if (ng.graph.order() != 6 || ng.graph.size() != 15) throw std::runtime_error("obstruction data: K6 has wrong size");
      has_k6 = true;
    }
    set.obstructions.push_back(ng);
  }
  if (!has_k6) throw std::runtime_error("obstruction data: K6 missing");
  return set;
}

inline ObstructionSet load_obstructions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open obstruction data " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return obstruction_set_from(parse_graph_blocks(buf.str()));
}

#ifdef LISTCRIT_DATA_DIR
inline std::string default_obstruction_path() { return std::string(LISTCRIT_DATA_DIR) + "/toroidal_obstructions.txt"; }
#endif

struct TorusCandidate {
  Graph graph;
  std::string source;  // prism key, hex
  int bijection = 0;   // index into the six maps t1 -> t2
};

/// t1[i] is identified with t2[perm[i]]. Both ends are listed in face-orbit
/// order, so 0..2 (orbit reversed) give a torus and 3..5 (orbit kept) a
/// Klein bottle.
inline std::array<int, 3> bijection(int index) {
  const int r = index % 3;
  if (index < 3) return {r, (r + 2) % 3, (r + 1) % 3};
  return {r, (r + 1) % 3, (r + 2) % 3};
}

inline bool orientable_bijection(int index) { return index < 3; }

/// Abstract graphs from identifying the ends of pc, one per bijection that
/// yields a simple graph on |V(pc)| - 3 vertices; duplicates removed. Only
/// the torus gluings unless `klein_bottle_too`.
inline std::vector<TorusCandidate> glue_ends(const PrismCanvas& pc, bool klein_bottle_too = false) {
  const Graph g = pc.graph.abstract();
  const int n = g.order();
  const std::string source = prism_key(pc).hex();
  std::vector<TorusCandidate> out;
  std::vector<std::string> seen;
  for (int b = 0; b < (klein_bottle_too ? 6 : 3); ++b) {
    const auto perm = bijection(b);
    std::vector<Vertex> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const Vertex a = pc.t1[i], c = pc.t2[perm[i]];
      const bool a_in_t2 = std::find(pc.t2.begin(), pc.t2.end(), a) != pc.t2.end();
      const bool c_in_t1 = std::find(pc.t1.begin(), pc.t1.end(), c) != pc.t1.end();
      if (a == c || a_in_t2 || c_in_t1) ok = false;
      rep[c] = a;
    }
    if (!ok) continue;
    std::vector<Vertex> id(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v)
      if (rep[v] == v) id[v] = next++;
    Graph h(next);
    auto in_t2 = [&](Vertex v) { return std::find(pc.t2.begin(), pc.t2.end(), v) != pc.t2.end(); };
    for (auto [u, v] : g.edges()) {
      // The edges of t2 land on those of t1.
      if (in_t2(u) && in_t2(v)) continue;
      const Vertex x = id[rep[u]], y = id[rep[v]];
      if (x == y || h.adjacent(x, y)) {
        ok = false;
        break;
      }
      h.add_edge(x, y);
    }
    if (!ok) continue;
    auto canon = canonical_graph_string(h);
    if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
    seen.push_back(std::move(canon));
    out.push_back({std::move(h), source, b});
  }
  return out;
}

enum class TorusClass { ContainsObstruction, IsK7, Certified5Choosable, Unresolved };

inline const char* to_string(TorusClass c) {
  switch (c) {
    case TorusClass::ContainsObstruction: return "ContainsObstruction";
    case TorusClass::IsK7: return "IsK7";
    case TorusClass::Certified5Choosable: return "Certified5Choosable";
    case TorusClass::Unresolved: return "Unresolved";
  }
  return "?";
}

struct Classification {
  TorusClass kind = TorusClass::Unresolved;
  std::string witness;
};

struct ClassifyOptions {
  /// Alon-Tarsi edge cutoff for the choosability chain. Torus graphs have up
  /// to 3n edges.
  int edge_cutoff = 40;
  std::size_t max_states = 4'000'000;
};

/// Repeatedly removes an induced subgraph that is colorable from what is
/// left of 5-lists once the rest is colored. Succeeds when nothing is left.
inline bool certify_5_choosable(const Graph& g, std::string* witness = nullptr, const ClassifyOptions& copt = {}) {
  FilterOptions opt;
  opt.special_configs = false;
  opt.alon_tarsi.edge_cutoff = copt.edge_cutoff;
  opt.alon_tarsi.max_states = copt.max_states;
  std::vector<Vertex> alive(g.order());
  std::iota(alive.begin(), alive.end(), 0);
  std::ostringstream steps;
  while (!alive.empty()) {
    const Graph h = g.induced(alive);
    const Verdict v = reducibility_search(h, SizeFunction(h.order(), 5), opt);
    if (!v.reducible() || v.certified.empty()) return false;
    std::vector<char> drop(h.order(), 0);
    for (Vertex x : v.certified) drop[x] = 1;
    std::vector<Vertex> rest, removed;
    for (int i = 0; i < h.order(); ++i) (drop[i] ? removed : rest).push_back(alive[i]);
    steps << (steps.tellp() > 0 ? ";" : "") << v.witness.substr(0, v.witness.find(':')) << ":"
          << detail::join_vertices(removed);
    alive = std::move(rest);
  }
  if (witness) *witness = steps.str();
  return true;
}

/// Works on the canonical labeling, so the verdict depends only on the
/// isomorphism class; witness vertices refer to canonical ids.
inline Classification classify(const Graph& input, const ObstructionSet& obs, const ClassifyOptions& copt = {}) {
  const Graph g = input.relabeled(canonical_labeling(input).perm);
  for (const auto& o : obs.obstructions)
    if (auto m = find_subgraph(o.graph, g)) return {TorusClass::ContainsObstruction, o.name + ":" + detail::join_vertices(*m)};
  if (isomorphic(g, obs.k7)) return {TorusClass::IsK7, "K7"};
  std::string w;
  if (certify_5_choosable(g, &w, copt)) return {TorusClass::Certified5Choosable, w};
  return {TorusClass::Unresolved, ""};
}

struct TorusRow {
  std::string candidate_key;
  Classification result;
  std::string source;
  int source_spacing = 0;
  int bijection = 0;
};

/// Hex of the canonical adjacency string, prefixed by the order.
inline std::string graph_key(const Graph& g) {
  const auto bits = canonical_graph_string(g);
  std::ostringstream os;
  os << std::hex << g.order() << '-';
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nib = 0;
    for (std::size_t j = i; j < i + 4; ++j) nib = nib * 2 + (j < bits.size() && bits[j] == '1');
    os << "0123456789abcdef"[nib];
  }
  return os.str();
}

struct TorusReport {
  std::vector<TorusRow> rows;  // sorted by candidate key, then provenance

  std::map<TorusClass, std::size_t> counts() const {
    std::map<TorusClass, std::size_t> c;
    for (const auto& r : rows) ++c[r.result.kind];
    return c;
  }
  std::size_t unresolved() const {
    auto c = counts();
    return c.count(TorusClass::Unresolved) ? c.at(TorusClass::Unresolved) : 0;
  }
};

/// glue_ends and classify over every candidate; one row per distinct torus
/// graph, with the first provenance in key order.
inline TorusReport run_torus_pipeline(const PrismLibrary& prisms, const ObstructionSet& obs, int jobs = 1) {
  std::vector<std::pair<int, const PrismEntry*>> items;
  for (const auto& [d, entries] : prisms)
    for (const auto& e : entries) items.push_back({d, &e});
  std::mutex mutex;
  std::map<std::string, TorusRow> rows;
  std::map<std::string, Graph> graphs;
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    for (auto& c : glue_ends(items[i].second->canvas)) {
      TorusRow row{graph_key(c.graph), {}, c.source, items[i].first, c.bijection};
      std::lock_guard lock(mutex);
      auto it = rows.find(row.candidate_key);
      auto earlier = [](const TorusRow& a, const TorusRow& b) {
        return std::tie(a.source_spacing, a.source, a.bijection) < std::tie(b.source_spacing, b.source, b.bijection);
      };
      if (it == rows.end()) {
        graphs.emplace(row.candidate_key, c.graph);
        rows.emplace(row.candidate_key, row);
      } else if (earlier(row, it->second)) {
        it->second = row;
      }
    }
  });
  std::vector<TorusRow*> todo;
  for (auto& [k, r] : rows) todo.push_back(&r);
  parallel_for(todo.size(), jobs, [&](std::size_t i) { todo[i]->result = classify(graphs.at(todo[i]->candidate_key), obs); });
  TorusReport report;
  for (auto& [k, r] : rows) report.rows.push_back(std::move(r));
  return report;
}

inline std::string format_torus_report(const TorusReport& report) {
  std::ostringstream os;
  for (const auto& r : report.rows)
    os << r.candidate_key << '\t' << to_string(r.result.kind) << '\t' << r.result.witness << '\t' << "spacing="
       << r.source_spacing << ",prism=" << r.source << ",bijection=" << r.bijection << '\n';
  return os.str();
}

}  // namespace listcrit
