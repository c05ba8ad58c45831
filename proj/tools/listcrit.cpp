#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <mutex>

#include "listcrit/store.hpp"

using namespace listcrit;
namespace fs = std::filesystem;

namespace {

struct Common {
  int jobs = 1;
  int at_cutoff = -1;
  bool log_discards = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--at-cutoff", at_cutoff, "edge limit for the Alon-Tarsi test")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--log-discards", log_discards, "write discarded canvases with witnesses to discards.txt");
  }
  FilterOptions filter(FilterOptions f = {}) const {
    if (at_cutoff >= 0) f.alon_tarsi.edge_cutoff = at_cutoff;
    return f;
  }
};

std::unique_ptr<std::ofstream> open_discard_log(const Common& c, const fs::path& dir) {
  if (!c.log_discards) return nullptr;
  auto out = std::make_unique<std::ofstream>(dir / "discards.txt", std::ios::app);
  if (!*out) throw std::runtime_error("cannot write " + (dir / "discards.txt").string());
  return out;
}

void print_counts(const PrismLibrary& lib) {
  for (const auto& [d, entries] : lib) std::cout << "spacing " << d << ": " << entries.size() << " candidates\n";
}

int gen_cycles(int max_circ, const fs::path& out, bool resume, const Common& c) {
  fs::create_directories(out);
  auto log = open_discard_log(c, out);
  CycleRunOptions opt;
  opt.resume = resume;
  opt.gen.jobs = c.jobs;
  opt.gen.filter = c.filter();
  opt.discard_log = log.get();
  const auto lib = run_cycle_generation(max_circ, out, opt);
  for (const auto& [l, entries] : lib) std::cout << "circumference " << l << ": " << entries.size() << " candidates\n";
  return 0;
}

int gen_prisms(int max_d, const fs::path& cycles, const fs::path& out, const Common& c) {
  const auto lib = load_cycle_library(cycles);
  const int need = 2 * max_d + 6;
  for (int l = 3; l <= need; ++l)
    if (!lib.count(l))
      throw std::runtime_error("cycle library in " + cycles.string() + " is incomplete: spacing " +
                               std::to_string(max_d) + " needs circumferences through " + std::to_string(need));
  fs::create_directories(out);
  auto log = open_discard_log(c, out);
  std::mutex log_mutex;
  PrismGenOptions opt;
  opt.jobs = c.jobs;
  opt.filter = c.filter();
  PrismLibrary prisms;
  for (int d = 0; d <= max_d; ++d) {
    if (log)
      opt.on_discard = [&, d](const PrismCanvas&, const CanonicalKey& k, const Verdict& v) {
        std::lock_guard lock(log_mutex);
        *log << "prism\t" << d << '\t' << k.hex() << '\t' << v.witness << '\n';
      };
    prisms[d] = paste_into_skeletons(d, lib, opt);
  }
  write_prism_library(out, prisms);
  print_counts(prisms);
  return 0;
}

int glue_prisms_cmd(const fs::path& in, const fs::path& out, int max_d, const Common& c) {
  auto lib = load_prism_library(in);
  if (lib.empty()) throw std::runtime_error("no prism records in " + in.string());
  for (int d = 0; d <= max_d; ++d)
    if (!lib.count(d)) throw std::runtime_error(in.string() + " has no prisms-" + std::to_string(d) + ".txt");
  for (auto it = lib.begin(); it != lib.end();) it = it->first > max_d ? lib.erase(it) : std::next(it);
  fs::create_directories(out);
  auto log = open_discard_log(c, out);
  std::mutex log_mutex;
  PrismGenOptions opt;
  opt.jobs = c.jobs;
  opt.filter = c.filter(glue_filter_options());
  if (log)
    opt.on_discard = [&](const PrismCanvas& pc, const CanonicalKey& k, const Verdict& v) {
      std::lock_guard lock(log_mutex);
      *log << "glued\t" << spacing(pc) << '\t' << k.hex() << '\t' << v.witness << '\n';
    };
  const auto report = glue_closure(lib, max_d, opt);
  write_prism_library(out, lib);
  std::cout << "pairs " << report.pairs << "\ngluings " << report.gluings << "\nnew candidates "
            << report.new_candidates.size() << '\n';
  for (const auto& [s, n] : report.spacing_seen) std::cout << "glued spacing " << s << ": " << n << '\n';
  for (const auto& e : report.new_candidates)
    std::cout << "new\t" << spacing(e.canvas) << '\t' << e.key.hex() << '\n';
  print_counts(lib);
  return 0;
}

int glue_torus(const fs::path& in, const std::string& obstructions, const fs::path& out, int max_d, const Common& c) {
  auto lib = load_prism_library(in);
  if (lib.empty()) throw std::runtime_error("no prism records in " + in.string());
  if (max_d >= 0)
    for (auto it = lib.begin(); it != lib.end();) it = it->first > max_d ? lib.erase(it) : std::next(it);
  const auto obs = load_obstructions(obstructions);
  const auto report = run_torus_pipeline(lib, obs, c.jobs);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_file_atomic(out, format_torus_report(report));
  for (const auto& [kind, n] : report.counts()) std::cout << to_string(kind) << '\t' << n << '\n';
  std::cout << "candidates\t" << report.rows.size() << '\n';
  return report.unresolved() ? 3 : 0;
}

int check(const fs::path& input, const Common& c) {
  const auto recs = parse_records(read_file(input), input.string());
  for (const auto& r : recs) {
    Verdict v;
    std::string key;
    if (r.kind == RecordKind::Cycle) {
      const auto cc = to_cycle_canvas(r);
      key = cycle_key(cc).hex();
      v = filter_cycle_canvas(cc, c.filter());
    } else if (r.kind == RecordKind::Prism) {
      const auto pc = to_prism_canvas(r);
      key = prism_key(pc).hex();
      v = filter_prism_canvas(pc, c.filter());
    } else {
      throw std::runtime_error("check: torus records have no boundary to filter against; use glue-torus");
    }
    std::cout << key << '\t' << to_string(v.kind);
    if (!v.witness.empty()) std::cout << '\t' << v.witness;
    std::cout << '\n';
  }
  return 0;
}

int canon(const fs::path& input) {
  for (const auto& r : parse_records(read_file(input), input.string())) std::cout << record_key(r) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumeration of critical canvases for 5-list-coloring"};
  app.require_subcommand(1);

  Common common;
  int max_circ = 0, max_spacing = 0, torus_spacing = -1;
  bool resume = false;
  std::string out, cycles, in, obstructions = default_obstruction_path(), input, stats_dir;

  auto* gc = app.add_subcommand("gen-cycles", "generate chordless cycle-canvas candidates");
  gc->add_option("--max-circ", max_circ, "largest circumference")->required()->check(CLI::Range(3, 64));
  gc->add_option("--out", out, "output directory")->required();
  gc->add_flag("--resume", resume, "continue an interrupted run in --out");
  common.add_to(gc);

  auto* gp = app.add_subcommand("gen-prisms", "paste cycle canvases into prism skeletons");
  gp->add_option("--max-spacing", max_spacing, "largest spacing")->required()->check(CLI::Range(0, 16));
  gp->add_option("--cycles", cycles, "directory written by gen-cycles")->required()->check(CLI::ExistingDirectory);
  gp->add_option("--out", out, "output directory")->required();
  common.add_to(gp);

  auto* gl = app.add_subcommand("glue-prisms", "close a prism set under gluing");
  gl->add_option("--in", in, "directory with prisms-<d>.txt")->required()->check(CLI::ExistingDirectory);
  gl->add_option("--out", out, "output directory")->required();
  gl->add_option("--max-spacing", max_spacing, "largest spacing kept")->required()->check(CLI::Range(0, 16));
  common.add_to(gl);

  auto* gt = app.add_subcommand("glue-torus", "glue prism ends and classify the toroidal graphs");
  gt->add_option("--in", in, "directory with prisms-<d>.txt")->required()->check(CLI::ExistingDirectory);
  gt->add_option("--obstructions", obstructions, "obstruction data file")->check(CLI::ExistingFile);
  gt->add_option("--out", out, "report file")->required();
  gt->add_option("--max-spacing", torus_spacing, "ignore prisms of larger spacing");
  gt->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* ck = app.add_subcommand("check", "run the criticality filter on every record of a file");
  ck->add_option("--input", input, "record file")->required()->check(CLI::ExistingFile);
  ck->add_option("--at-cutoff", common.at_cutoff, "edge limit for the Alon-Tarsi test")->check(CLI::NonNegativeNumber);

  auto* cn = app.add_subcommand("canon", "print the canonical key of every record of a file");
  cn->add_option("--input", input, "record file")->required()->check(CLI::ExistingFile);

  auto* st = app.add_subcommand("stats", "print param, count and largest order per record file");
  st->add_option("dir", stats_dir, "directory of record files")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gc) return gen_cycles(max_circ, out, resume, common);
    if (*gp) return gen_prisms(max_spacing, cycles, out, common);
    if (*gl) return glue_prisms_cmd(in, out, max_spacing, common);
    if (*gt) return glue_torus(in, obstructions, out, torus_spacing, common);
    if (*ck) return check(input, common);
    if (*cn) return canon(input);
    if (*st) {
      std::cout << stats_tsv(stats_dir);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "listcrit: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
