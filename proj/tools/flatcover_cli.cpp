#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "flatcover/anneal.hpp"
#include "flatcover/classifier.hpp"
#include "flatcover/poly.hpp"
#include "flatcover/reduce1d.hpp"
#include "flatcover/reduce2d.hpp"
#include "flatcover/solver.hpp"

namespace fs = std::filesystem;
using namespace flatcover;

namespace {

constexpr int kYes = 0;
constexpr int kUsage = 1;
constexpr int kNo = 2;
constexpr int kUnknown = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path.string());
}

Polyomino read_poly(const fs::path& path) {
  try {
    return parse_poly(read_file(path));
  } catch (const PolyError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

void kv(const std::string& key, const std::string& value) { std::cout << key << ": " << value << '\n'; }
template <class T>
void kv(const std::string& key, const T& value) {
  std::cout << key << ": " << value << '\n';
}

std::string placement_text(const Placement& p) {
  return std::to_string(p.orientation) + " " + std::to_string(p.offset.x) + " " + std::to_string(p.offset.y);
}

SearchBudget budget_from(std::uint64_t nodes, double seconds) {
  SearchBudget b;
  if (nodes) b.max_nodes = nodes;
  if (seconds > 0) b.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
  return b;
}

int exit_for(Outcome o, bool want_coverable) {
  if (o == Outcome::Unknown) return kUnknown;
  return (o == Outcome::Coverable) == want_coverable ? kYes : kNo;
}

std::string with_suffix(const fs::path& p, const std::string& suffix) { return p.string() + suffix; }

// ------------------------------------------------------------- commands

int cmd_classify(const fs::path& stain_file) {
  const Polyomino q = read_poly(stain_file);
  const Classification c = classify(q);
  kv("cells", q.size());
  if (c.always_coverable) {
    kv("result", "AlwaysCoverable");
    kv("entry", c.entry);
    return kYes;
  }
  kv("result", "NotAlwaysCoverable");
  kv("entry", c.entry);
  if (c.counterexample) {
    const auto out = with_suffix(stain_file, ".counterexample");
    write_file(out, render(*c.counterexample));
    kv("counterexample", out);
    kv("counterexample_box", std::to_string(c.counterexample->width()) + "x" +
                                 std::to_string(c.counterexample->height()));
  } else {
    kv("counterexample", "unavailable (no sticker ships for this entry)");
  }
  return kNo;
}

struct CoverArgs {
  fs::path sticker, stain;
  std::uint64_t budget = 0;
  double seconds = 0;
  bool enumerate = false;
  std::size_t cap = 1000;
  int depth = 0;
  int jobs = 1;
};

int cmd_cover(const CoverArgs& a) {
  const Polyomino sticker = read_poly(a.sticker);
  const Polyomino stain = read_poly(a.stain);
  const SearchBudget budget = budget_from(a.budget, a.seconds);
  if (a.enumerate) {
    const CoverEnumeration e = enumerate_minimal_covers(sticker, stain, budget, a.cap);
    kv("covers", e.covers.size());
    kv("complete", e.complete ? "yes" : "no");
    kv("nodes", e.nodes);
    for (std::size_t i = 0; i < e.covers.size(); ++i) {
      std::string line;
      for (const Placement& p : e.covers[i].placements) line += (line.empty() ? "" : "; ") + placement_text(p);
      kv("cover " + std::to_string(i + 1), line);
    }
    if (!e.covers.empty()) return kYes;
    return e.complete ? kNo : kUnknown;
  }
  SolverOptions opt;
  opt.interference_depth = a.depth;
  opt.jobs = a.jobs;
  const Decision d = flat_cover_decide(sticker, stain, budget, opt);
  kv("result", to_string(d.outcome));
  kv("nodes", d.nodes);
  kv("seconds", d.seconds);
  if (d.witness) {
    kv("stickers", d.witness->placements.size());
    for (const Placement& p : d.witness->placements) kv("placement", placement_text(p));
    kv("verified", verify_cover(*d.witness) ? "yes" : "no");
  }
  return exit_for(d.outcome, true);
}

struct SearchArgs {
  fs::path stain, config, resume;
  std::optional<std::uint64_t> seed, steps;
  fs::path results;
  int jobs = 1;
};

int cmd_search(const SearchArgs& a) {
  const Polyomino stain = read_poly(a.stain);
  anneal::SearchParams p;
  p.stain_name = a.stain.stem().string();
  p.results_dir = a.stain.parent_path() / "results";
  p = anneal::parse_params(read_file(a.config), p);
  if (a.seed) p.seed = *a.seed;
  if (a.steps) p.steps = *a.steps;
  if (!a.results.empty()) p.results_dir = a.results;
  if (a.jobs > 1) p.jobs = a.jobs;
  anneal::Observer obs;
  obs.log = [](const std::string& line) { std::cout << "log: " << line << std::endl; };
  anneal::SearchOutcome out;
  try {
    out = a.resume.empty() ? anneal::anneal(stain, p, obs) : anneal::resume(stain, p, a.resume, obs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "flatcover search: refused: " << e.what() << '\n';
    return kUsage;
  }
  kv("found", out.found ? "yes" : "no");
  kv("chain", out.chain);
  kv("steps", out.steps);
  kv("verifications", out.verifications);
  for (const auto& f : out.written) kv("written", f.string());
  if (out.found) {
    kv("sticker_cells", out.counterexample->size());
    kv("sticker_box", std::to_string(out.counterexample->width()) + "x" + std::to_string(out.counterexample->height()));
    return kYes;
  }
  kv("best_energy", out.best_energy);
  kv("best_two_sticker_covers", out.best_penalty.two_sticker_covers);
  kv("best_cells", out.best.cells.size());
  return kNo;
}

int cmd_reduce2d(const fs::path& file, const std::string& prefix_arg, bool solve, std::uint64_t nodes, double seconds) {
  reduce2d::PrecolorInstance inst;
  try {
    inst = reduce2d::parse_instance(read_file(file));
    const reduce2d::ReductionOutput r = reduce2d::build_instance(inst);
    const fs::path prefix = prefix_arg.empty() ? file.parent_path() / file.stem() : fs::path(prefix_arg);
    write_file(with_suffix(prefix, ".sticker"), render(r.sticker));
    write_file(with_suffix(prefix, ".stain"), render(r.stain));
    kv("vertices", inst.vertices.size());
    kv("precolored", inst.precolored.size());
    kv("sticker", with_suffix(prefix, ".sticker"));
    kv("stain", with_suffix(prefix, ".stain"));
    kv("stain_cells", r.stain.size());
    kv("stain_box", std::to_string(r.stain.width()) + "x" + std::to_string(r.stain.height()));
    if (!solve) return kYes;
    const reduce2d::RoundTripReport rt = reduce2d::roundtrip(inst, budget_from(nodes, seconds));
    kv("extendable", rt.satisfiable ? "yes" : "no");
    kv("cover", to_string(rt.cover));
    kv("nodes", rt.nodes);
    if (rt.satisfiable) kv("witness_verified", rt.witness_verified ? "yes" : "no");
    kv("agree", rt.inconclusive ? "inconclusive" : (rt.agree ? "yes" : "no"));
    if (rt.inconclusive) return kUnknown;
    return rt.cover == Outcome::Coverable ? kYes : kNo;
  } catch (const std::invalid_argument& e) {
    throw UsageError(file.string() + ": " + e.what());
  }
}

int cmd_reduce1d(const fs::path& file, const std::string& prefix_arg, bool solve, std::uint64_t nodes,
                 double seconds) {
  reduce1d::X3CInstance inst;
  try {
    inst = reduce1d::parse_x3c(read_file(file));
  } catch (const std::invalid_argument& e) {
    throw UsageError(file.string() + ": " + e.what());
  }
  const reduce1d::OneDTemplate t = reduce1d::build_template(inst);
  const fs::path prefix = prefix_arg.empty() ? file.parent_path() / file.stem() : fs::path(prefix_arg);
  write_file(with_suffix(prefix, ".template"), reduce1d::template_to_rle(t));
  write_file(with_suffix(prefix, ".positions"), reduce1d::template_to_positions(t));
  kv("q", inst.q);
  kv("r", inst.r());
  kv("N", t.element_size);
  kv("L", t.target_length);
  kv("W", t.gadget_size);
  std::string ruler;
  for (const auto a : t.ruler) ruler += (ruler.empty() ? "" : " ") + std::to_string(a);
  kv("ruler", ruler);
  kv("template_cells", t.positions.size());
  kv("template_span", t.positions.back() - t.positions.front() + 1);
  kv("template", with_suffix(prefix, ".template"));
  kv("positions", with_suffix(prefix, ".positions"));
  if (!solve) return kYes;
  const auto exact = reduce1d::brute_x3c(inst);
  kv("exact_cover", exact ? "yes" : "no");
  if (exact) {
    const auto w = reduce1d::witness_from_x3c(inst, t, *exact);
    kv("witness_verified", reduce1d::verify_1d(t.positions, t.target_length, w) ? "yes" : "no");
  }
  const auto d = reduce1d::solve_1d(t.positions, t.target_length, budget_from(nodes, seconds));
  kv("cover", to_string(d.outcome));
  kv("nodes", d.nodes);
  if (d.outcome != Outcome::Unknown) kv("agree", (d.outcome == Outcome::Coverable) == exact.has_value() ? "yes" : "no");
  return exit_for(d.outcome, true);
}

int cmd_solve1d(const fs::path& file, std::optional<std::int64_t> length_arg, std::uint64_t nodes, double seconds) {
  const std::string text = read_file(file);
  std::vector<std::int64_t> positions;
  std::int64_t length = -1;
  try {
    if (text.rfind("flatcover-template", 0) == 0) {
      const auto t = reduce1d::template_from_rle(text);
      positions = t.positions;
      length = t.target_length;
    } else {
      positions = reduce1d::positions_from_list(text, &length);
    }
  } catch (const std::exception& e) {
    throw UsageError(file.string() + ": " + e.what());
  }
  if (length_arg) length = *length_arg;
  if (length < 0) throw UsageError("no target length: pass --length or a '# L' header");
  if (positions.empty()) throw UsageError(file.string() + ": empty template");
  const auto d = reduce1d::solve_1d(positions, length, budget_from(nodes, seconds));
  kv("result", to_string(d.outcome));
  kv("length", length);
  kv("nodes", d.nodes);
  if (d.witness) {
    std::string s;
    for (const auto x : d.witness->shifts) s += (s.empty() ? "" : " ") + std::to_string(x);
    kv("shifts", s);
    kv("verified", reduce1d::verify_1d(positions, length, *d.witness) ? "yes" : "no");
  }
  return exit_for(d.outcome, true);
}

int cmd_verify_catalog(bool exhaustive, double seconds, double large_seconds, const std::vector<std::string>& only,
                       int jobs) {
  VerifyOptions opt;
  opt.budget = budget_from(0, seconds);
  opt.large_budget = budget_from(0, large_seconds);
  opt.exhaustive = exhaustive;
  opt.only = only;
  opt.jobs = jobs;
  const Catalog& cat = default_catalog();
  const CatalogVerification v = verify_catalog(cat, opt);
  bool unknown = false, failed = false;
  for (const auto& e : v.entries) {
    std::ostringstream line;
    line << to_string(e.status);
    if (e.sticker_width) line << " box=" << e.sticker_width << "x" << e.sticker_height;
    line << " nodes=" << e.nodes << " seconds=" << e.seconds;
    if (e.unknown_permitted) line << " (large sticker: Unknown permitted without --exhaustive)";
    kv(e.name, line.str());
    if (e.status == EntryStatus::Unknown && !e.unknown_permitted) unknown = true;
    if (e.status != EntryStatus::Verified && e.status != EntryStatus::Unknown) failed = true;
  }
  kv("entries", v.entries.size());
  kv("passed", v.passed() ? "yes" : "no");
  if (failed) return kNo;
  return unknown ? kUnknown : kYes;
}

int cmd_partition_check() {
  const PartitionReport r = exhaustive_partition_check();
  std::string counts;
  for (int n = 1; n <= 7; ++n) counts += (n > 1 ? " " : "") + std::to_string(r.counts[static_cast<std::size_t>(n)]);
  kv("counts", counts);
  for (int n = 1; n <= 6; ++n) {
    const auto i = static_cast<std::size_t>(n);
    kv("size " + std::to_string(n), std::to_string(r.include_I[i]) + " include an I-member, " +
                                         std::to_string(r.inside_J[i]) + " inside a J-member");
  }
  const bool all7 = r.include_I[7] == r.counts[7];
  kv("summary", std::to_string(r.counts[7]) + " heptominoes, " + (all7 ? "all" : "not all") + " include an I-member");
  kv("violations", r.violations.size());
  for (const auto& v : r.violations) std::cout << v;
  return r.passed() ? kYes : kNo;
}

int cmd_gadgets(std::uint64_t nodes, double seconds) {
  const reduce2d::GadgetReport g = reduce2d::check_gadget_properties(budget_from(nodes, seconds));
  std::string colors;
  for (const int c : g.q0_cover_colors) colors += (colors.empty() ? "" : " ") + std::to_string(c);
  auto triple = [](const std::array<std::size_t, 3>& a) {
    return std::to_string(a[0]) + " " + std::to_string(a[1]) + " " + std::to_string(a[2]);
  };
  std::map<std::size_t, std::size_t> by_size;
  for (const std::size_t k : g.q0_cover_sizes) ++by_size[k];
  std::string sizes;
  for (const auto& [k, n] : by_size) sizes += (sizes.empty() ? "" : " ") + std::to_string(k) + "x" + std::to_string(n);
  kv("q0_covers", g.q0_cover_count);
  kv("q0_covers_by_stickers", sizes);
  kv("q0_single_covers", g.q0_single_covers);
  kv("q0_single_cover_colors", colors);
  kv("pi_covers", triple(g.pi_cover_counts));
  kv("pi_single_covers", triple(g.pi_single_covers));
  for (std::size_t axis = 0; axis < 2; ++axis) {
    std::string rows;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) rows += g.overlap[axis][i][j] ? '1' : '0';
      if (i < 2) rows += '/';
    }
    kv(axis == 0 ? "overlap_x" : "overlap_y", rows);
  }
  kv("property1", g.property1 ? "yes" : "no");
  kv("property2", g.property2 ? "yes" : "no");
  kv("property3", g.property3 ? "yes" : "no");
  kv("complete", g.complete ? "yes" : "no");
  if (!g.complete) return kUnknown;
  return g.passed() ? kYes : kNo;
}

int cmd_render(const fs::path& file, bool svg) {
  const Polyomino p = read_poly(file);
  std::cout << (svg ? render_svg(p) : render(p));
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat covers of polyomino stains by congruent stickers"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  fs::path classify_file;
  auto* classify_cmd = app.add_subcommand("classify", "Decide whether every sticker can cover the stain");
  classify_cmd->add_option("stain", classify_file)->required();

  CoverArgs cover;
  auto* cover_cmd = app.add_subcommand("cover", "Decide whether the sticker flat-covers the stain");
  cover_cmd->add_option("sticker", cover.sticker)->required();
  cover_cmd->add_option("stain", cover.stain)->required();
  cover_cmd->add_option("--budget", cover.budget, "Node budget (placements tried)");
  cover_cmd->add_option("--time", cover.seconds, "Time budget in seconds");
  cover_cmd->add_flag("--enumerate", cover.enumerate, "List all minimal covers");
  cover_cmd->add_option("--cap", cover.cap, "Maximum number of covers to list")->check(CLI::PositiveNumber);
  cover_cmd->add_option("--interference-depth", cover.depth, "Window-limited overlap checks (0: off)");

  SearchArgs search;
  std::uint64_t seed = 0, steps = 0;
  auto* search_cmd = app.add_subcommand("search", "Anneal for a sticker that cannot cover the stain");
  search_cmd->add_option("stain", search.stain)->required();
  search_cmd->add_option("--config", search.config)->required();
  auto* seed_opt = search_cmd->add_option("--seed", seed);
  auto* steps_opt = search_cmd->add_option("--steps", steps);
  search_cmd->add_option("--resume", search.resume, "Continue from a checkpoint file");
  search_cmd->add_option("--results", search.results, "Directory for verified counterexamples");

  fs::path r2_file;
  std::string r2_prefix;
  bool r2_solve = false;
  std::uint64_t r_nodes = 0;
  double r_seconds = 0;
  auto* r2_cmd = app.add_subcommand("reduce-2d", "Build the sticker/stain pair for a 3-precoloring instance");
  r2_cmd->add_option("instance", r2_file)->required();
  r2_cmd->add_option("--out", r2_prefix, "Output prefix (default: next to the instance)");
  r2_cmd->add_flag("--solve", r2_solve, "Also solve both sides and compare");
  r2_cmd->add_option("--budget", r_nodes);
  r2_cmd->add_option("--time", r_seconds);

  fs::path r1_file;
  std::string r1_prefix;
  bool r1_solve = false;
  auto* r1_cmd = app.add_subcommand("reduce-1d", "Build the 1D template for an X3C instance");
  r1_cmd->add_option("instance", r1_file)->required();
  r1_cmd->add_option("--out", r1_prefix, "Output prefix (default: next to the instance)");
  r1_cmd->add_flag("--solve", r1_solve, "Also solve both sides and compare");
  r1_cmd->add_option("--budget", r_nodes);
  r1_cmd->add_option("--time", r_seconds);

  fs::path s1_file;
  std::int64_t s1_length = -1;
  auto* s1_cmd = app.add_subcommand("solve-1d", "Cover [0, L) with disjoint shifts of a 1D template");
  s1_cmd->add_option("template", s1_file, "Template (.template) or position list (.positions)")->required();
  auto* s1_len_opt = s1_cmd->add_option("--length", s1_length);
  s1_cmd->add_option("--budget", r_nodes);
  s1_cmd->add_option("--time", r_seconds);

  bool exhaustive = false;
  double entry_seconds = 600, large_seconds = 30;
  std::vector<std::string> only;
  auto* vc_cmd = app.add_subcommand("verify-catalog", "Check every shipped counterexample against its stain");
  vc_cmd->add_flag("--exhaustive", exhaustive, "No Unknown allowance for the largest stickers");
  vc_cmd->add_option("--time", entry_seconds, "Seconds per entry");
  vc_cmd->add_option("--large-time", large_seconds, "Seconds per large entry without --exhaustive");
  vc_cmd->add_option("--only", only, "Entry names to check");

  app.add_subcommand("partition-check", "Exhaustive check of the I/J partition up to 7 cells");

  auto* gadget_cmd = app.add_subcommand("gadgets", "Check the three properties of the 2D gadgets");
  gadget_cmd->add_option("--budget", r_nodes);
  gadget_cmd->add_option("--time", r_seconds);

  fs::path render_file;
  bool svg = false;
  auto* render_cmd = app.add_subcommand("render", "Print a polyomino file as text or SVG");
  render_cmd->add_option("file", render_file)->required();
  render_cmd->add_flag("--svg", svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(classify_file);
    if (*cover_cmd) {
      cover.jobs = jobs;
      return cmd_cover(cover);
    }
    if (*search_cmd) {
      if (*seed_opt) search.seed = seed;
      if (*steps_opt) search.steps = steps;
      search.jobs = jobs;
      return cmd_search(search);
    }
    if (*r2_cmd) return cmd_reduce2d(r2_file, r2_prefix, r2_solve, r_nodes, r_seconds);
    if (*r1_cmd) return cmd_reduce1d(r1_file, r1_prefix, r1_solve, r_nodes, r_seconds);
    if (*s1_cmd) {
      return cmd_solve1d(s1_file, *s1_len_opt ? std::optional<std::int64_t>(s1_length) : std::nullopt, r_nodes,
                         r_seconds);
    }
    if (*vc_cmd) return cmd_verify_catalog(exhaustive, entry_seconds, large_seconds, only, jobs);
    if (app.got_subcommand("partition-check")) return cmd_partition_check();
    if (*gadget_cmd) return cmd_gadgets(r_nodes, r_seconds);
    if (*render_cmd) return cmd_render(render_file, svg);
  } catch (const UsageError& e) {
    std::cerr << "flatcover: " << e.what() << '\n';
    return kUsage;
  } catch (const CatalogError& e) {
    std::cerr << "flatcover: catalog: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "flatcover: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
