#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flatcover/poly.hpp"
#include "flatcover/solver.hpp"

namespace flatcover::anneal {

// Cells live on a square grid centered on (0, 0). Outside the core
// (max(|x|, |y|) <= core_radius) the shape is fixed by all 8 transforms about
// the center cell; inside the core cells are free.
struct Candidate {
  int radius = 48;
  int core_radius = 3;
  std::vector<Cell> cells;  // sorted, absolute grid coordinates

  bool contains(Cell c) const;
  bool in_core(Cell c) const;
  // Cells that move together with c: c alone in the core, its orbit outside.
  std::vector<Cell> unit_of(Cell c) const;
  std::vector<Cell> core() const;
  // Non-core cells with 0 <= y <= x: the fundamental octant.
  std::vector<Cell> domain() const;
  Polyomino shape() const;
  std::uint64_t hash() const;
};

enum class MoveKind { AddRemove, Flip2, Flip3, Swap };
inline constexpr int kMoveKinds = 4;
std::string to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::AddRemove;
  std::vector<Cell> squares;  // grid squares picked by the proposal
  std::vector<bool> states;   // requested state per square (Flip*, AddRemove)
};

// Hole: the cells touch diagonally around an empty region, as in a ring
// closed at a corner.
enum class Rejection { Empty, Disconnected, Cyclic, Hole, IncludesStain, NoOp, OutOfRange };
std::string to_string(Rejection r);

struct MoveResult {
  std::optional<Candidate> candidate;
  std::optional<Rejection> rejection;
};

struct PenaltyWeights {
  double base = 1.0;
  double side = 1.0;      // per sticker of a cover hugging a side or outer diagonal
  double blocking = 4.0;  // divided by 1 + (cell additions that break the cover)
  int side_distance = 2;
};

struct PenaltyBreakdown {
  std::int64_t one_sticker_covers = 0;
  std::int64_t two_sticker_covers = 0;
  double side_surcharge = 0;
  double blocking_surcharge = 0;
  double total = 0;
  std::int64_t total_fixed = 0;  // total in thousandths, exact

  friend bool operator==(const PenaltyBreakdown&, const PenaltyBreakdown&) = default;
};

inline constexpr std::int64_t kOneStickerMultiplier = 1'000'000;
inline constexpr std::int64_t kFixedScale = 1000;

// From-scratch evaluation. A placement is an (orientation, offset) pair, so a
// symmetric sticker contributes each congruent copy once per symmetry.
PenaltyBreakdown penalty(const Candidate& candidate, const Polyomino& stain, const PenaltyWeights& weights = {});

// Incrementally maintained penalty for one stain. Thousandth fixed-point
// arithmetic keeps delta and from-scratch totals bit-identical.
class PenaltyTracker {
 public:
  PenaltyTracker(const Candidate& candidate, const Polyomino& stain, const PenaltyWeights& weights);
  ~PenaltyTracker();
  PenaltyTracker(const PenaltyTracker&) = delete;
  PenaltyTracker& operator=(const PenaltyTracker&) = delete;

  // Sets every listed cell to the given state.
  void set_cells(std::span<const Cell> cells, const std::vector<bool>& states);
  PenaltyBreakdown breakdown() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Samples a kind from kind_weights, then its squares near the shape.
Move propose_move(const Candidate& candidate, std::mt19937_64& rng,
                  const std::array<double, kMoveKinds>& kind_weights = {1, 1, 1, 1});

// The mutated candidate iff it stays a nonempty hole-free tree inside the
// grid that does not include the stain.
MoveResult apply_move(const Candidate& candidate, const Move& move, const Polyomino& stain);

// Validity of an arbitrary cell set as a candidate (symmetry excluded).
std::optional<Rejection> check_candidate(const Candidate& candidate, const Polyomino& stain);
bool is_symmetric_outside_core(const Candidate& candidate);

struct SearchParams {
  double initial_temperature = 0;  // <= 0: calibrate so about half the uphill moves pass
  double cooling_rate = 0.99995;
  std::uint64_t steps = 200000;
  int restarts = 1;
  std::uint64_t seed = 1;
  PenaltyWeights weights;
  int interference_depth = 0;
  int core_radius = 3;
  int grid_radius = 48;
  int init_cells = 120;
  int min_cells = 0;  // moves that shrink the shape below this are skipped
  std::array<double, kMoveKinds> move_weights{1, 1, 1, 1};
  double coverable_penalty = 50;  // energy of zero-penalty shapes the solver covered
  SearchBudget verify_budget = SearchBudget::time(std::chrono::seconds(60));
  std::uint64_t log_interval = 10000;
  std::uint64_t checkpoint_interval = 0;
  std::filesystem::path checkpoint;   // empty: no checkpoints
  std::filesystem::path results_dir;  // empty: do not write results
  std::string stain_name = "stain";
  int jobs = 1;
};

// "key = value" lines, '#' comments. Throws std::invalid_argument on an
// unknown key, a malformed value or a violated invariant.
SearchParams parse_params(std::string_view text, SearchParams base = {});
std::string format_params(const SearchParams& p);
void validate(const SearchParams& p);

struct SearchOutcome {
  bool found = false;
  std::optional<Polyomino> counterexample;  // passed unpruned NotCoverable
  Candidate best;                           // lowest-energy accepted state
  double best_energy = 0;
  PenaltyBreakdown best_penalty;
  int chain = 0;
  std::uint64_t steps = 0;
  std::uint64_t verifications = 0;
  std::vector<std::filesystem::path> written;
};

// Callbacks receive each accepted step; used by property tests.
struct Observer {
  std::function<void(const std::string&)> log;
  std::function<void(const Candidate&, const PenaltyBreakdown&)> accepted;
  // Called with every zero-penalty shape handed to the verifier and its verdict.
  std::function<void(const Polyomino&, Outcome)> verified;
};

// Throws std::invalid_argument if the stain is always-coverable.
SearchOutcome anneal(const Polyomino& stain, const SearchParams& params, const Observer& observer = {});

// Continues a single chain from a checkpoint written by anneal.
SearchOutcome resume(const Polyomino& stain, const SearchParams& params, const std::filesystem::path& checkpoint,
                     const Observer& observer = {});

}  // namespace flatcover::anneal
