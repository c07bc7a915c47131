#include "flatcover/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#ifndef FLATCOVER_DEFAULT_CATALOG_DIR
#define FLATCOVER_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace flatcover {
namespace {

Polyomino read_shape(const std::filesystem::path& file, const std::string& name) {
  std::ifstream in(file);
  if (!in) throw CatalogError(name, "cannot open " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_poly(text.str());
  } catch (const PolyError& e) {
    throw CatalogError(name, file.filename().string() + ": " + e.what());
  }
}

std::vector<CatalogEntry> load_side(const std::filesystem::path& dir, bool with_stickers) {
  std::vector<CatalogEntry> out;
  if (!std::filesystem::is_directory(dir)) throw CatalogError(dir.string(), "catalog directory missing");
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() != ".stain") continue;
    const std::string name = entry_name_from_stem(f.path().stem().string());
    CatalogEntry e{name, read_shape(f.path(), name), std::nullopt};
    auto sticker = f.path();
    sticker.replace_extension(".sticker");
    if (std::filesystem::exists(sticker)) {
      if (!with_stickers) throw CatalogError(name, "J-entries carry no counterexample");
      e.counterexample = read_shape(sticker, name);
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.stain.size() != b.stain.size()) return a.stain.size() < b.stain.size();
    return a.name < b.name;
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (canonical(out[i].stain) == canonical(out[i - 1].stain)) {
      throw CatalogError(out[i].name, "same shape as " + out[i - 1].name);
    }
  }
  return out;
}

std::optional<Transform> transform_between(const Polyomino& from, const Polyomino& to) {
  for (const Transform t : Transform::all()) {
    if (transformed(from, t) == to) return t;
  }
  return std::nullopt;
}

Classification not_coverable(const CatalogEntry& e, Inclusion inc) {
  Classification c;
  c.entry = e.name;
  if (e.counterexample) {
    const auto t = transform_between(e.stain, inc.image);
    c.counterexample = transformed(*e.counterexample, t.value());
  }
  c.inclusion = std::move(inc);
  return c;
}

}  // namespace

std::string entry_file_stem(const std::string& name) {
  std::string s = name;
  if (auto slash = s.find('/'); slash != std::string::npos) s[slash] = '-';
  return s;
}

std::string entry_name_from_stem(const std::string& stem) {
  std::string s = stem;
  if (auto dash = s.find('-'); dash != std::string::npos) s[dash] = '/';
  return s;
}

Catalog load_catalog(const std::filesystem::path& dir) {
  Catalog c;
  c.I = load_side(dir / "I", true);
  c.J = load_side(dir / "J", false);
  return c;
}

std::filesystem::path default_catalog_dir() {
  if (const char* env = std::getenv("FLATCOVER_CATALOG"); env && *env) return env;
  return FLATCOVER_DEFAULT_CATALOG_DIR;
}

const Catalog& default_catalog() {
  static const Catalog c = load_catalog(default_catalog_dir());
  return c;
}

const std::vector<CatalogEntry>& catalog_I() { return default_catalog().I; }
const std::vector<CatalogEntry>& catalog_J() { return default_catalog().J; }

Classification classify(const Polyomino& q, const Catalog& catalog) {
  for (const CatalogEntry& e : catalog.I) {
    if (e.stain.size() > q.size()) continue;
    if (auto inc = find_inclusion(q.cells(), e.stain)) return not_coverable(e, std::move(*inc));
  }
  if (q.size() >= 7) throw CatalogError("I", "no entry inside a shape of 7 or more cells");
  for (const CatalogEntry& e : catalog.J) {
    if (e.stain.size() >= q.size() && includes(e.stain.cells(), q)) {
      Classification c;
      c.always_coverable = true;
      c.entry = e.name;
      return c;
    }
  }
  throw CatalogError("J", "shape neither includes an I-entry nor fits in a J-entry:\n" + render(q));
}

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Verified:
      return "NotCoverable";
    case EntryStatus::Coverable:
      return "Coverable";
    case EntryStatus::Unknown:
      return "Unknown";
    case EntryStatus::Missing:
      return "MissingCounterexample";
    case EntryStatus::NotSimplyConnected:
      return "NotSimplyConnected";
  }
  return "?";
}

bool CatalogVerification::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryVerification& e) {
    return e.status == EntryStatus::Verified || (e.status == EntryStatus::Unknown && e.unknown_permitted);
  });
}

CatalogVerification verify_catalog(const Catalog& catalog, const VerifyOptions& options) {
  std::vector<const CatalogEntry*> todo;
  for (const CatalogEntry& e : catalog.I) {
    if (options.only.empty() || std::find(options.only.begin(), options.only.end(), e.name) != options.only.end()) {
      todo.push_back(&e);
    }
  }
  CatalogVerification report;
  report.entries.resize(todo.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      const CatalogEntry& e = *todo[i];
      EntryVerification& v = report.entries[i];
      v.name = e.name;
      if (!e.counterexample) {
        v.status = EntryStatus::Missing;
        continue;
      }
      const Polyomino& p = *e.counterexample;
      v.sticker_width = p.width();
      v.sticker_height = p.height();
      if (!is_simply_connected(p)) {
        v.status = EntryStatus::NotSimplyConnected;
        continue;
      }
      v.large = std::max(p.width(), p.height()) > options.large_side;
      v.unknown_permitted = v.large && !options.exhaustive;
      const SearchBudget& budget = v.unknown_permitted ? options.large_budget : options.budget;
      const Decision d = flat_cover_decide(p, e.stain, budget);
      v.nodes = d.nodes;
      v.seconds = d.seconds;
      v.status = d.outcome == Outcome::NotCoverable ? EntryStatus::Verified
                 : d.outcome == Outcome::Coverable  ? EntryStatus::Coverable
                                                    : EntryStatus::Unknown;
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return report;
}

PartitionReport exhaustive_partition_check(const Catalog& catalog) {
  PartitionReport r;
  for (int n = 1; n <= 7; ++n) {
    for (const Polyomino& q : free_polyominoes(n)) {
      ++r.counts[static_cast<std::size_t>(n)];
      bool has_i = false;
      for (const CatalogEntry& e : catalog.I) {
        if (e.stain.size() <= q.size() && includes(q.cells(), e.stain)) {
          has_i = true;
          break;
        }
      }
      bool in_j = false;
      for (const CatalogEntry& e : catalog.J) {
        if (e.stain.size() >= q.size() && includes(e.stain.cells(), q)) {
          in_j = true;
          break;
        }
      }
      if (has_i) ++r.include_I[static_cast<std::size_t>(n)];
      if (in_j) ++r.inside_J[static_cast<std::size_t>(n)];
      if (n == 7 && !has_i) r.violations.push_back("heptomino includes no I-entry:\n" + render(q));
      if (n < 7 && has_i == in_j) {
        r.violations.push_back(std::string(has_i ? "includes an I-entry and fits in a J-entry" : "in neither class") +
                               ":\n" + render(q));
      }
    }
  }
  return r;
}

}  // namespace flatcover
