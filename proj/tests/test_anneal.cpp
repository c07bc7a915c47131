#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "flatcover/anneal.hpp"
#include "flatcover/classifier.hpp"

using namespace flatcover;
using namespace flatcover::anneal;
namespace fs = std::filesystem;

namespace {

Polyomino P(const char* text) { return parse_poly(text); }

const Polyomino& pentomino_I() {
  static const Polyomino p = P("1 5\n#####");
  return p;
}

Candidate make(std::vector<Cell> cells, int core_radius = 50, int radius = 60) {
  Candidate c;
  c.radius = radius;
  c.core_radius = core_radius;
  std::sort(cells.begin(), cells.end());
  c.cells = std::move(cells);
  return c;
}

bool is_tree(const std::vector<Cell>& cells) {
  const std::set<Cell> s(cells.begin(), cells.end());
  std::size_t edges = 0;
  for (Cell c : cells) edges += s.count(c + Cell{1, 0}) + s.count(c + Cell{0, 1});
  return is_connected(cells) && edges + 1 == cells.size();
}

// Random tree grown cell by cell, never closing a cycle.
std::vector<Cell> random_tree(std::mt19937_64& rng, int n) {
  std::set<Cell> s{{0, 0}};
  const Cell steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (static_cast<int>(s.size()) < n) {
    std::vector<Cell> v(s.begin(), s.end());
    const Cell c = v[rng() % v.size()] + steps[rng() % 4];
    if (s.count(c)) continue;
    int k = 0;
    for (Cell d : steps) k += static_cast<int>(s.count(c + d));
    if (k == 1) s.insert(c);
  }
  return {s.begin(), s.end()};
}

struct BruteCounts {
  std::int64_t one = 0, two = 0;
};

// Placements are (orientation, offset) pairs whose image meets the stain.
BruteCounts brute_counts(const std::vector<Cell>& sticker, const Polyomino& stain) {
  const std::set<Cell> target(stain.cells().begin(), stain.cells().end());
  std::set<std::vector<Cell>> unused;
  std::vector<std::set<Cell>> placements;
  std::set<std::pair<int, Cell>> seen;
  for (int o = 0; o < 8; ++o) {
    const Transform t(o);
    for (Cell a : sticker) {
      for (Cell b : stain.cells()) {
        const Cell off = b - t.apply(a);
        if (!seen.insert({o, off}).second) continue;
        std::set<Cell> img;
        for (Cell x : sticker) img.insert(t.apply(x) + off);
        placements.push_back(std::move(img));
      }
    }
  }
  BruteCounts r;
  for (const auto& a : placements) {
    if (std::all_of(target.begin(), target.end(), [&](Cell c) { return a.count(c); })) ++r.one;
  }
  std::int64_t ordered = 0;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    for (std::size_t j = 0; j < placements.size(); ++j) {
      if (i == j) continue;
      const auto& a = placements[i];
      const auto& b = placements[j];
      bool covers = true, a_alone = true;
      for (Cell c : target) {
        covers = covers && (a.count(c) || b.count(c));
        a_alone = a_alone && a.count(c);
      }
      if (!covers || a_alone) continue;
      bool b_alone = std::all_of(target.begin(), target.end(), [&](Cell c) { return b.count(c); });
      if (b_alone) continue;
      bool disjoint = true;
      for (Cell c : a) {
        if (b.count(c)) {
          disjoint = false;
          break;
        }
      }
      if (disjoint) ++ordered;
    }
  }
  r.two = ordered / 2;
  return r;
}

SearchParams small_params(std::uint64_t seed) {
  SearchParams p;
  p.seed = seed;
  p.grid_radius = 14;
  p.core_radius = 2;
  p.init_cells = 40;
  p.steps = 3000;
  p.initial_temperature = 5;
  p.cooling_rate = 0.999;
  p.log_interval = 500;
  p.verify_budget = SearchBudget::nodes(200000);
  return p;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() /
         ("flatcover-anneal-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" + name);
}

}  // namespace

TEST(AnnealPenalty, BaseCountMatchesBruteForce) {
  std::mt19937_64 rng(11);
  const std::vector<Polyomino> stains{pentomino_I(), P("2 3\n#.#\n###"), P("3 3\n.#.\n###\n.#."),
                                      P("2 4\n##..\n.###")};
  int nonzero = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 17);
    const Candidate c = make(random_tree(rng, n));
    for (const Polyomino& s : stains) {
      const PenaltyBreakdown b = penalty(c, s);
      const BruteCounts want = brute_counts(c.cells, s);
      EXPECT_EQ(b.one_sticker_covers, want.one) << render(c.shape()) << render(s);
      EXPECT_EQ(b.two_sticker_covers, want.two) << render(c.shape()) << render(s);
      nonzero += want.two > 0;
    }
  }
  EXPECT_GT(nonzero, 20);
}

TEST(AnnealPenalty, OneStickerCoverDominates) {
  const Candidate line = make({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
  const PenaltyBreakdown b = penalty(line, pentomino_I());
  EXPECT_EQ(b.one_sticker_covers, 8);  // two offsets for each of the four horizontal orientations
  EXPECT_GE(b.total, static_cast<double>(kOneStickerMultiplier));
}

TEST(AnnealPenalty, TotalZeroIffNoTwoStickerCover) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Candidate c = make(random_tree(rng, 3 + static_cast<int>(rng() % 10)));
    const PenaltyBreakdown b = penalty(c, P("3 3\n###\n###\n###"));
    EXPECT_EQ(b.total_fixed == 0, b.two_sticker_covers == 0 && b.one_sticker_covers == 0);
    EXPECT_EQ(b.total == 0, b.total_fixed == 0);
  }
}

TEST(AnnealPenalty, TrackerMatchesScratchOnArbitraryEdits) {
  std::mt19937_64 rng(3);
  Candidate c = make(random_tree(rng, 12), 50, 20);
  const Polyomino stain = P("2 3\n#.#\n###");
  PenaltyTracker tracker(c, stain, {});
  EXPECT_EQ(tracker.breakdown(), penalty(c, stain));
  for (int i = 0; i < 200; ++i) {
    const Cell x{static_cast<int>(rng() % 13) - 6, static_cast<int>(rng() % 13) - 6};
    const bool on = !c.contains(x);
    tracker.set_cells(std::vector<Cell>{x}, {on});
    std::vector<Cell> cells = c.cells;
    if (on) {
      cells.push_back(x);
    } else {
      cells.erase(std::find(cells.begin(), cells.end(), x));
    }
    if (cells.empty()) {
      tracker.set_cells(std::vector<Cell>{x}, {true});
      continue;
    }
    c = make(cells, 50, 20);
    ASSERT_EQ(tracker.breakdown(), penalty(c, stain)) << i;
  }
}

TEST(AnnealMove, KindDistribution) {
  std::mt19937_64 rng(17);
  const Candidate c = make(random_tree(rng, 15), 3, 20);
  const std::array<double, kMoveKinds> w{1, 2, 3, 4};
  std::array<int, kMoveKinds> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<int>(propose_move(c, rng, w).kind)];
  for (int k = 0; k < kMoveKinds; ++k) {
    const double p = w[k] / 10.0;
    const double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(counts[k] - n * p), 3 * sigma) << to_string(static_cast<MoveKind>(k));
  }
}

TEST(AnnealMove, Rejections) {
  const Polyomino& s = pentomino_I();
  const Candidate path = make({{0, 0}, {1, 0}, {2, 0}});
  const MoveResult leaf = apply_move(path, Move{MoveKind::AddRemove, {{2, 0}}, {false}}, s);
  ASSERT_TRUE(leaf.candidate);
  EXPECT_EQ(leaf.candidate->cells.size(), 2u);

  const MoveResult cut = apply_move(path, Move{MoveKind::AddRemove, {{1, 0}}, {false}}, s);
  EXPECT_FALSE(cut.candidate);
  EXPECT_EQ(cut.rejection, Rejection::Disconnected);

  const Candidate ell = make({{0, 0}, {1, 0}, {1, 1}});
  const MoveResult square = apply_move(ell, Move{MoveKind::AddRemove, {{0, 1}}, {true}}, s);
  EXPECT_EQ(square.rejection, Rejection::Cyclic);

  const Candidate hook = make({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}});
  EXPECT_EQ(apply_move(hook, Move{MoveKind::AddRemove, {{0, 1}}, {true}}, s).rejection, Rejection::Hole);

  const MoveResult swap = apply_move(path, Move{MoveKind::Swap, {{0, 0}, {2, 0}}, {true, true}}, s);
  EXPECT_EQ(swap.rejection, Rejection::NoOp);

  const Candidate four = make({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  EXPECT_EQ(apply_move(four, Move{MoveKind::AddRemove, {{4, 0}}, {true}}, s).rejection, Rejection::IncludesStain);

  const Candidate one = make({{0, 0}});
  EXPECT_EQ(apply_move(one, Move{MoveKind::AddRemove, {{0, 0}}, {false}}, s).rejection, Rejection::Empty);
  EXPECT_EQ(apply_move(one, Move{MoveKind::AddRemove, {{0, 0}}, {true}}, s).rejection, Rejection::NoOp);

  const Candidate edge = make({{0, 0}}, 50, 2);
  EXPECT_EQ(apply_move(edge, Move{MoveKind::AddRemove, {{3, 0}}, {true}}, s).rejection, Rejection::OutOfRange);
}

TEST(AnnealMove, EveryTwoByTwoBlockIsACycle) {
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Cell> cells;
    for (int i = 0; i < 4; ++i) {
      if (mask >> i & 1) cells.push_back({i % 2, i / 2});
    }
    if (cells.empty()) continue;
    const auto r = check_candidate(make(cells), pentomino_I());
    if (mask == 15) {
      EXPECT_EQ(r, Rejection::Cyclic);
    } else if (is_connected(cells)) {
      EXPECT_FALSE(r);
    }
  }
}

TEST(AnnealMove, OutsideCoreMovesAreMirrored) {
  Candidate c = make({{0, 0}}, 0, 10);
  const MoveResult r = apply_move(c, Move{MoveKind::AddRemove, {{1, 0}}, {true}}, pentomino_I());
  ASSERT_TRUE(r.candidate);
  std::vector<Cell> plus{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
  std::sort(plus.begin(), plus.end());
  EXPECT_EQ(r.candidate->cells, plus);
  EXPECT_TRUE(is_symmetric_outside_core(*r.candidate));
  EXPECT_EQ(r.candidate->domain(), (std::vector<Cell>{{1, 0}}));
}

TEST(AnnealSearch, AcceptedStepsKeepInvariantsAndDeltasExact) {
  const Polyomino stain = pentomino_I();
  SearchParams p = small_params(7);
  p.core_radius = 3;
  p.grid_radius = 10;
  p.init_cells = 40;
  p.min_cells = 20;
  p.steps = 40000;
  p.initial_temperature = 0;
  p.cooling_rate = 0.99999;
  int accepted = 0;
  Observer obs;
  obs.accepted = [&](const Candidate& c, const PenaltyBreakdown& b) {
    ++accepted;
    ASSERT_TRUE(is_symmetric_outside_core(c));
    ASSERT_TRUE(is_tree(c.cells));
    ASSERT_TRUE(is_simply_connected(c.shape()));
    ASSERT_GE(c.cells.size(), static_cast<std::size_t>(p.min_cells));
    ASSERT_FALSE(includes(c.cells, stain));
    if (accepted <= 1000) ASSERT_EQ(b, penalty(c, stain, p.weights)) << "accepted step " << accepted;
  };
  anneal::anneal(stain, p, obs);
  EXPECT_GE(accepted, 1000);
}

TEST(AnnealSearch, EmittedShapesPassedUnprunedVerification) {
  const Polyomino stain = P("3 3\n###\n###\n###");
  SearchParams p = small_params(2);
  p.steps = 4000;
  p.interference_depth = 1;
  std::vector<std::pair<Polyomino, Outcome>> verdicts;
  Observer obs;
  obs.verified = [&](const Polyomino& s, Outcome o) { verdicts.emplace_back(s, o); };
  obs.accepted = [&](const Candidate& c, const PenaltyBreakdown& b) {
    if (b.total_fixed == 0) EXPECT_EQ(penalty(c, stain, p.weights).total_fixed, 0);
  };
  const SearchOutcome out = anneal::anneal(stain, p, obs);
  EXPECT_GT(out.verifications, 0u);
  if (out.found) {
    ASSERT_TRUE(out.counterexample);
    ASSERT_FALSE(verdicts.empty());
    EXPECT_EQ(verdicts.back().first, *out.counterexample);
    EXPECT_EQ(verdicts.back().second, Outcome::NotCoverable);
    EXPECT_EQ(flat_cover_decide(*out.counterexample, stain, SearchBudget::nodes(2'000'000)).outcome,
              Outcome::NotCoverable);
  }
  for (const auto& [shape, o] : verdicts) {
    if (o == Outcome::NotCoverable) EXPECT_TRUE(out.found);
  }
}

TEST(AnnealSearch, Deterministic) {
  const Polyomino stain = pentomino_I();
  const SearchParams p = small_params(99);
  std::vector<std::string> a, b;
  Observer oa, ob;
  oa.log = [&](const std::string& l) { a.push_back(l); };
  ob.log = [&](const std::string& l) { b.push_back(l); };
  const SearchOutcome ra = anneal::anneal(stain, p, oa);
  const SearchOutcome rb = anneal::anneal(stain, p, ob);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(ra.best.cells, rb.best.cells);
  EXPECT_EQ(ra.best_energy, rb.best_energy);
  EXPECT_EQ(ra.steps, rb.steps);

  SearchParams q = p;
  q.seed = 100;
  std::vector<std::string> c;
  Observer oc;
  oc.log = [&](const std::string& l) { c.push_back(l); };
  anneal::anneal(stain, q, oc);
  EXPECT_NE(a, c);
}

TEST(AnnealSearch, ResumeMatchesUninterruptedRun) {
  const Polyomino stain = pentomino_I();
  const fs::path ckpt = temp_path("ckpt");
  SearchParams full = small_params(4);
  full.steps = 2000;
  std::vector<std::string> full_log;
  Observer of;
  of.log = [&](const std::string& l) { full_log.push_back(l); };
  const SearchOutcome whole = anneal::anneal(stain, full, of);

  SearchParams first = full;
  first.steps = 1000;
  first.checkpoint = ckpt;
  first.checkpoint_interval = 1000;
  anneal::anneal(stain, first);
  ASSERT_TRUE(fs::exists(ckpt));

  std::vector<std::string> tail;
  Observer ot;
  ot.log = [&](const std::string& l) { tail.push_back(l); };
  const SearchOutcome resumed = resume(stain, full, ckpt, ot);
  fs::remove(ckpt);
  EXPECT_EQ(resumed.best.cells, whole.best.cells);
  EXPECT_EQ(resumed.best_energy, whole.best_energy);
  EXPECT_EQ(resumed.steps, whole.steps);
  ASSERT_GE(full_log.size(), tail.size());
  EXPECT_TRUE(std::equal(tail.begin(), tail.end(), full_log.end() - static_cast<std::ptrdiff_t>(tail.size())));
  EXPECT_FALSE(tail.empty());
}

TEST(AnnealSearch, RefusesAlwaysCoverableStains) {
  EXPECT_THROW(anneal::anneal(P("2 4\n.#..\n####"), small_params(1)), std::invalid_argument);
  EXPECT_THROW(anneal::anneal(P("1 1\n#"), small_params(1)), std::invalid_argument);
}

TEST(AnnealParams, ParseAndFormat) {
  const SearchParams p = parse_params("# chain setup\nsteps = 500\ncooling_rate=0.9\nmove_weights = 1 0 2 3\nseed = 8\n");
  EXPECT_EQ(p.steps, 500u);
  EXPECT_DOUBLE_EQ(p.cooling_rate, 0.9);
  EXPECT_EQ(p.move_weights, (std::array<double, kMoveKinds>{1, 0, 2, 3}));
  const SearchParams back = parse_params(format_params(p));
  EXPECT_EQ(format_params(back), format_params(p));
  EXPECT_THROW(parse_params("bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("cooling_rate = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("side_weight = -1\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("steps = ten\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("move_weights = 1 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("move_weights = 0 0 0 0\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("steps\n"), std::invalid_argument);
  EXPECT_THROW(parse_params("init_cells = 10\nmin_cells = 11\n"), std::invalid_argument);
}
