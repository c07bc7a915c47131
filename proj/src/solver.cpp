#include "flatcover/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <bit>
#include <stdexcept>
#include <thread>

namespace flatcover {
namespace {

using Clock = std::chrono::steady_clock;

// dst |= src << shift, both little-endian multiword bitsets.
void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, int shift) {
  const int word_shift = shift >> 6;
  const int bit_shift = shift & 63;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const std::uint64_t v = src[k];
    if (v == 0) continue;
    const std::size_t lo = k + static_cast<std::size_t>(word_shift);
    if (lo < dst.size()) dst[lo] |= v << bit_shift;
    if (bit_shift != 0 && lo + 1 < dst.size()) dst[lo + 1] |= v >> (64 - bit_shift);
  }
}

// For every ordered pair of sticker images (i, j), the set of offsets d such
// that image j shifted by d (relative to image i) shares a cell with image i.
// That set is the difference set I_i - I_j, stored as a bitmap.
class OverlapTable {
 public:
  explicit OverlapTable(const std::vector<Polyomino>& images) : count_(static_cast<int>(images.size())) {
    tables_.resize(static_cast<std::size_t>(count_) * count_);
    for (int i = 0; i < count_; ++i) {
      for (int j = i; j < count_; ++j) build(images[i], images[j], tables_[index(i, j)]);
    }
  }

  bool overlaps(int i, int j, Cell d) const {
    if (i > j) {
      std::swap(i, j);
      d = Cell{-d.x, -d.y};
    }
    const Table& t = tables_[index(i, j)];
    const int x = d.x - t.x0, y = d.y - t.y0;
    if (x < 0 || y < 0 || x >= t.width || y >= t.height) return false;
    return (t.words[static_cast<std::size_t>(y) * t.words_per_row + (x >> 6)] >> (x & 63)) & 1u;
  }

 private:
  struct Table {
    int x0 = 0, y0 = 0, width = 0, height = 0, words_per_row = 0;
    std::vector<std::uint64_t> words;
  };

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * count_ + j; }

  static void build(const Polyomino& a, const Polyomino& b, Table& t) {
    t.x0 = -(b.width() - 1);
    t.y0 = -(b.height() - 1);
    t.width = a.width() + b.width() - 1;
    t.height = a.height() + b.height() - 1;
    t.words_per_row = (t.width + 63) / 64;
    t.words.assign(static_cast<std::size_t>(t.height) * t.words_per_row, 0);
    const RowBits& bits = a.bits();
    for (const Cell c : b.cells()) {
      const int shift = b.width() - 1 - c.x;
      for (int y = 0; y < a.height(); ++y) {
        const int ty = y - c.y + b.height() - 1;
        std::span<std::uint64_t> dst(t.words.data() + static_cast<std::size_t>(ty) * t.words_per_row,
                                     static_cast<std::size_t>(t.words_per_row));
        or_shifted(dst, bits.row(y), shift);
      }
    }
  }

  int count_;
  std::vector<Table> tables_;
};

struct Candidate {
  Placement placement;
  std::size_t trace_begin = 0;  // into Engine::traces_
};

// Read-only precomputation shared by all DFS walkers.
class Engine {
 public:
  Engine(const Polyomino& sticker, const Polyomino& stain, const SolverOptions& options)
      : sticker_(sticker),
        stain_(stain),
        options_(options),
        images_(transforms_of(sticker)),
        words_((stain.size() + 63) / 64) {
    if (options_.interference_depth <= 0) table_.emplace(images_);
    stain_index_.assign(static_cast<std::size_t>(stain.width()) * stain.height(), -1);
    for (std::size_t k = 0; k < stain.cells().size(); ++k) {
      const Cell c = stain.cells()[k];
      stain_index_[static_cast<std::size_t>(c.y) * stain.width() + c.x] = static_cast<int>(k);
    }
    by_target_.resize(stain.size());
    for (std::size_t k = 0; k < stain.size(); ++k) {
      const Cell target = stain.cells()[k];
      std::vector<Placement> ps;
      for (std::size_t o = 0; o < images_.size(); ++o) {
        for (const Cell c : images_[o].cells()) ps.push_back({static_cast<int>(o), target - c});
      }
      std::sort(ps.begin(), ps.end());
      for (const Placement& p : ps) {
        const std::size_t begin = traces_.size();
        traces_.resize(begin + words_, 0);
        const Polyomino& img = images_[static_cast<std::size_t>(p.orientation)];
        for (std::size_t s = 0; s < stain.size(); ++s) {
          if (img.contains(stain.cells()[s] - p.offset)) traces_[begin + s / 64] |= std::uint64_t{1} << (s % 64);
        }
        by_target_[k].push_back({p, begin});
      }
    }
  }

  const Polyomino& sticker() const { return sticker_; }
  const Polyomino& stain() const { return stain_; }
  const std::vector<Polyomino>& images() const { return images_; }
  const SolverOptions& options() const { return options_; }
  std::size_t words() const { return words_; }
  const std::vector<Candidate>& candidates(std::size_t target) const { return by_target_[target]; }
  const std::uint64_t* trace(const Candidate& c) const { return traces_.data() + c.trace_begin; }
  bool exact() const { return table_.has_value(); }
  bool overlaps(const Placement& a, const Placement& b) const {
    return table_->overlaps(a.orientation, b.orientation, b.offset - a.offset);
  }

 private:
  const Polyomino& sticker_;
  const Polyomino& stain_;
  SolverOptions options_;
  std::vector<Polyomino> images_;
  std::size_t words_;
  std::optional<OverlapTable> table_;
  std::vector<int> stain_index_;
  std::vector<std::vector<Candidate>> by_target_;
  std::vector<std::uint64_t> traces_;
};

struct SharedBudget {
  SearchBudget budget;
  Clock::time_point start = Clock::now();
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::atomic<bool> stop{false};

  // Returns false once the budget is spent.
  bool charge() {
    const std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget.max_nodes && n > *budget.max_nodes) {
      exhausted = true;
      return false;
    }
    if (budget.max_time && (n & 1023) == 0 && Clock::now() - start > *budget.max_time) {
      exhausted = true;
      return false;
    }
    return !exhausted.load(std::memory_order_relaxed);
  }
};

// Depth-first walker. on_cover returns true to stop the search.
class Walker {
 public:
  Walker(const Engine& engine, SharedBudget& shared)
      : e_(engine), shared_(shared), covered_(engine.words(), 0) {
    if (!e_.exact()) {
      const int d = e_.options().interference_depth;
      win_x0_ = -d;
      win_y0_ = -d;
      win_w_ = e_.stain().width() + 2 * d;
      win_h_ = e_.stain().height() + 2 * d;
      window_.assign(static_cast<std::size_t>(win_w_) * win_h_, 0);
    }
  }

  // Returns true if the search was stopped by on_cover.
  bool run(const std::function<bool(const std::vector<Placement>&)>& on_cover) {
    on_cover_ = &on_cover;
    return dfs();
  }

  // Runs the subtree under one root candidate of the first target.
  bool run_from(const Candidate& root, const std::function<bool(const std::vector<Placement>&)>& on_cover) {
    on_cover_ = &on_cover;
    if (!shared_.charge()) return true;
    place(root);
    const bool stopped = dfs();
    unplace(root);
    return stopped;
  }

 private:
  std::optional<std::size_t> next_target() const {
    const std::size_t n = e_.stain().size();
    for (std::size_t w = 0; w < covered_.size(); ++w) {
      const std::uint64_t free = ~covered_[w];
      if (free == 0) continue;
      const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(free));
      if (k < n) return k;
      return std::nullopt;
    }
    return std::nullopt;
  }

  bool compatible(const Candidate& cand) const {
    const std::uint64_t* tr = e_.trace(cand);
    for (std::size_t w = 0; w < covered_.size(); ++w) {
      if (tr[w] & covered_[w]) return false;
    }
    if (e_.exact()) {
      for (const Placement& p : placed_) {
        if (e_.overlaps(p, cand.placement)) return false;
      }
      return true;
    }
    const Polyomino& img = e_.images()[static_cast<std::size_t>(cand.placement.orientation)];
    for (const Cell c : img.cells()) {
      const Cell g = c + cand.placement.offset;
      const int x = g.x - win_x0_, y = g.y - win_y0_;
      if (x < 0 || y < 0 || x >= win_w_ || y >= win_h_) continue;
      if (window_[static_cast<std::size_t>(y) * win_w_ + x]) return false;
    }
    return true;
  }

  void mark(const Candidate& cand, std::uint8_t value) {
    const Polyomino& img = e_.images()[static_cast<std::size_t>(cand.placement.orientation)];
    for (const Cell c : img.cells()) {
      const Cell g = c + cand.placement.offset;
      const int x = g.x - win_x0_, y = g.y - win_y0_;
      if (x < 0 || y < 0 || x >= win_w_ || y >= win_h_) continue;
      window_[static_cast<std::size_t>(y) * win_w_ + x] = value;
    }
  }

  void place(const Candidate& cand) {
    const std::uint64_t* tr = e_.trace(cand);
    for (std::size_t w = 0; w < covered_.size(); ++w) covered_[w] |= tr[w];
    placed_.push_back(cand.placement);
    if (!e_.exact()) mark(cand, 1);
  }

  void unplace(const Candidate& cand) {
    const std::uint64_t* tr = e_.trace(cand);
    for (std::size_t w = 0; w < covered_.size(); ++w) covered_[w] &= ~tr[w];
    placed_.pop_back();
    if (!e_.exact()) mark(cand, 0);
  }

  bool dfs() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    const auto target = next_target();
    if (!target) {
      if (!e_.exact()) {
        CoverWitness w{e_.sticker(), e_.stain(), placed_};
        if (!verify_cover(w)) return false;
      }
      return (*on_cover_)(placed_);
    }
    for (const Candidate& cand : e_.candidates(*target)) {
      if (!compatible(cand)) continue;
      if (!shared_.charge()) return true;
      place(cand);
      const bool stopped = dfs();
      unplace(cand);
      if (stopped) return true;
    }
    return false;
  }

  const Engine& e_;
  SharedBudget& shared_;
  std::vector<std::uint64_t> covered_;
  std::vector<Placement> placed_;
  const std::function<bool(const std::vector<Placement>&)>* on_cover_ = nullptr;
  int win_x0_ = 0, win_y0_ = 0, win_w_ = 0, win_h_ = 0;
  std::vector<std::uint8_t> window_;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Coverable:
      return "Coverable";
    case Outcome::NotCoverable:
      return "NotCoverable";
    case Outcome::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::vector<Cell> placement_cells(const std::vector<Polyomino>& orientations, const Placement& p) {
  std::vector<Cell> out;
  const Polyomino& img = orientations.at(static_cast<std::size_t>(p.orientation));
  out.reserve(img.size());
  for (const Cell c : img.cells()) out.push_back(c + p.offset);
  return out;
}

std::vector<Placement> placements_covering(const Polyomino& sticker, const CellSet& occupied, Cell target) {
  std::vector<Placement> out;
  if (occupied.contains(target)) return out;
  const auto images = transforms_of(sticker);
  for (std::size_t o = 0; o < images.size(); ++o) {
    std::vector<Placement> here;
    for (const Cell c : images[o].cells()) {
      const Cell offset = target - c;
      const bool clear = std::none_of(images[o].cells().begin(), images[o].cells().end(),
                                      [&](Cell k) { return occupied.contains(k + offset); });
      if (clear) here.push_back({static_cast<int>(o), offset});
    }
    std::sort(here.begin(), here.end());
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

Decision flat_cover_decide(const Polyomino& sticker, const Polyomino& stain, const SearchBudget& budget,
                           const SolverOptions& options) {
  const Engine engine(sticker, stain, options);
  SharedBudget shared;
  shared.budget = budget;
  Decision d;
  std::optional<std::vector<Placement>> found;
  std::mutex found_mu;

  auto on_cover = [&](const std::vector<Placement>& placed) {
    std::lock_guard lock(found_mu);
    if (!found) found = placed;
    shared.stop = true;
    return true;
  };

  if (options.jobs <= 1) {
    Walker walker(engine, shared);
    walker.run(on_cover);
  } else {
    const auto& roots = engine.candidates(0);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int j = 0; j < options.jobs; ++j) {
      workers.emplace_back([&] {
        Walker walker(engine, shared);
        for (std::size_t i = next++; i < roots.size(); i = next++) {
          if (walker.run_from(roots[i], on_cover)) {
            if (shared.stop || shared.exhausted) return;
          }
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  d.nodes = shared.nodes.load();
  d.seconds = seconds_since(shared.start);
  if (found) {
    d.outcome = Outcome::Coverable;
    d.witness = CoverWitness{sticker, stain, *found};
  } else if (shared.exhausted) {
    d.outcome = Outcome::Unknown;
  } else {
    d.outcome = Outcome::NotCoverable;
  }
  return d;
}

CoverEnumeration enumerate_minimal_covers(const Polyomino& sticker, const Polyomino& stain,
                                          const SearchBudget& budget, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("enumerate_minimal_covers: cap must be >= 1");
  const Engine engine(sticker, stain, SolverOptions{});
  SharedBudget shared;
  shared.budget = budget;
  CoverEnumeration result;
  bool capped = false;
  Walker walker(engine, shared);
  walker.run([&](const std::vector<Placement>& placed) {
    result.covers.push_back(CoverWitness{sticker, stain, placed});
    if (result.covers.size() >= cap) {
      capped = true;
      return true;
    }
    return false;
  });
  result.nodes = shared.nodes.load();
  result.complete = !capped && !shared.exhausted;
  return result;
}

bool verify_cover(const CoverWitness& witness) {
  const auto images = transforms_of(witness.sticker);
  const CellSet stain(witness.stain.cells().begin(), witness.stain.cells().end());
  CellSet used;
  for (const Placement& p : witness.placements) {
    if (p.orientation < 0 || static_cast<std::size_t>(p.orientation) >= images.size()) return false;
    bool meets_stain = false;
    for (const Cell c : placement_cells(images, p)) {
      if (!used.insert(c).second) return false;
      meets_stain = meets_stain || stain.contains(c);
    }
    if (!meets_stain) return false;
  }
  return std::all_of(stain.begin(), stain.end(), [&](Cell c) { return used.contains(c); });
}

bool brute_force_oracle(const Polyomino& sticker, const Polyomino& stain) {
  if (stain.size() > 6 || sticker.size() > 8) {
    throw std::invalid_argument("brute_force_oracle: requires |stain| <= 6 and |sticker| <= 8");
  }
  // Every copy of the sticker that meets the stain, as a sorted cell list.
  std::vector<std::vector<Cell>> copies;
  for (const Transform t : Transform::all()) {
    std::vector<Cell> image;
    for (const Cell c : sticker.cells()) image.push_back(t.apply(c));
    for (const Cell s : stain.cells()) {
      for (const Cell anchor : image) {
        std::vector<Cell> copy;
        for (const Cell c : image) copy.push_back(c - anchor + s);
        std::sort(copy.begin(), copy.end());
        copies.push_back(std::move(copy));
      }
    }
  }
  std::sort(copies.begin(), copies.end());
  copies.erase(std::unique(copies.begin(), copies.end()), copies.end());

  const std::set<Cell> target(stain.cells().begin(), stain.cells().end());
  std::map<Cell, int> use;
  const std::size_t max_size = stain.size();

  auto covers = [&] {
    return std::all_of(target.begin(), target.end(), [&](Cell c) {
      auto it = use.find(c);
      return it != use.end() && it->second > 0;
    });
  };
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t from, std::size_t chosen) {
    if (chosen > 0 && covers()) return true;
    if (chosen == max_size) return false;
    for (std::size_t i = from; i < copies.size(); ++i) {
      const auto& copy = copies[i];
      const bool disjoint = std::none_of(copy.begin(), copy.end(), [&](Cell c) {
        auto it = use.find(c);
        return it != use.end() && it->second > 0;
      });
      if (!disjoint) continue;
      for (const Cell c : copy) ++use[c];
      const bool ok = choose(i + 1, chosen + 1);
      for (const Cell c : copy) --use[c];
      if (ok) return true;
    }
    return false;
  };
  return choose(0, 0);
}

}  // namespace flatcover
