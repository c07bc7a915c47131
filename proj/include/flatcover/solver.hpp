#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatcover/poly.hpp"

namespace flatcover {

// An oriented, translated copy of a sticker: the cells of
// transforms_of(sticker)[orientation] shifted by offset.
struct Placement {
  int orientation = 0;
  Cell offset;

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement& a, const Placement& b) {
    if (auto c = a.orientation <=> b.orientation; c != 0) return c;
    return a.offset <=> b.offset;
  }
};

struct CoverWitness {
  Polyomino sticker;
  Polyomino stain;
  std::vector<Placement> placements;
};

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;

  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
  static SearchBudget time(std::chrono::milliseconds t) { return {std::nullopt, t}; }
  bool is_unlimited() const { return !max_nodes && !max_time; }
};

enum class Outcome { Coverable, NotCoverable, Unknown };

std::string to_string(Outcome o);

struct Decision {
  Outcome outcome = Outcome::Unknown;
  std::optional<CoverWitness> witness;  // set iff outcome == Coverable
  std::uint64_t nodes = 0;              // placements tried
  double seconds = 0.0;
};

struct SolverOptions {
  // 0 disables pruning. Otherwise overlaps are only checked within this many
  // cells of the stain's bounding box; every cover found that way is
  // re-verified exactly before it is reported.
  int interference_depth = 0;
  // Worker threads for splitting the root branching (decide only).
  int jobs = 1;
};

// Placements of the sticker containing target and disjoint from occupied,
// ordered by orientation index and then offset.
std::vector<Placement> placements_covering(const Polyomino& sticker, const CellSet& occupied, Cell target);

std::vector<Cell> placement_cells(const std::vector<Polyomino>& orientations, const Placement& p);

// Complete depth-first search branching on the smallest uncovered stain cell.
Decision flat_cover_decide(const Polyomino& sticker, const Polyomino& stain,
                           const SearchBudget& budget = SearchBudget::unlimited(),
                           const SolverOptions& options = {});

struct CoverEnumeration {
  std::vector<CoverWitness> covers;
  bool complete = false;  // false if the cap or the budget cut the search short
  std::uint64_t nodes = 0;
};

// All covers in which every sticker meets the stain, in DFS order, up to cap.
CoverEnumeration enumerate_minimal_covers(const Polyomino& sticker, const Polyomino& stain,
                                          const SearchBudget& budget = SearchBudget::unlimited(),
                                          std::size_t cap = 1000);

// Disjointness, coverage and "every sticker meets the stain", by set arithmetic.
bool verify_cover(const CoverWitness& witness);

// Subset enumeration over every placement meeting the stain. Guarded to
// |stain| <= 6 and |sticker| <= 8; throws std::invalid_argument otherwise.
bool brute_force_oracle(const Polyomino& sticker, const Polyomino& stain);

}  // namespace flatcover
