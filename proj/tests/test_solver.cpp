#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "flatcover/poly.hpp"
#include "flatcover/solver.hpp"

using namespace flatcover;

namespace {

Polyomino P(const char* text) { return parse_poly(text); }

const Polyomino kMono = P("1 1\n#");
const Polyomino kDomino = P("1 2\n##");
const Polyomino kTromino = P("2 2\n#.\n##");
const Polyomino kPentI = P("1 5\n#####");
const Polyomino kPentX = P("3 3\n.#.\n###\n.#.");

std::set<std::vector<Cell>> placed_sets(const CoverWitness& w) {
  const auto orients = transforms_of(w.sticker);
  std::set<std::vector<Cell>> out;
  for (const Placement& p : w.placements) {
    auto cells = placement_cells(orients, p);
    std::sort(cells.begin(), cells.end());
    out.insert(cells);
  }
  return out;
}

}  // namespace

TEST(Placements, Counts) {
  EXPECT_EQ(placements_covering(kMono, {}, {0, 0}).size(), 1u);
  EXPECT_EQ(placements_covering(kDomino, {}, {3, -2}).size(), 4u);
  EXPECT_EQ(placements_covering(kTromino, {}, {0, 0}).size(), 12u);
}

TEST(Placements, ContainTargetAndAvoidOccupied) {
  const CellSet occupied{{1, 0}, {0, 1}};
  const auto orients = transforms_of(kTromino);
  const auto list = placements_covering(kTromino, occupied, {0, 0});
  EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
  EXPECT_LT(list.size(), 12u);
  for (const Placement& p : list) {
    const auto cells = placement_cells(orients, p);
    EXPECT_NE(std::find(cells.begin(), cells.end(), Cell{0, 0}), cells.end());
    for (Cell c : cells) EXPECT_FALSE(occupied.count(c));
  }
}

TEST(Placements, DistinctCellSetsAndBound) {
  for (int n = 1; n <= 5; ++n) {
    for (const Polyomino& p : free_polyominoes(n)) {
      const auto orients = transforms_of(p);
      const auto list = placements_covering(p, {}, {0, 0});
      EXPECT_EQ(list.size(), orients.size() * p.size());
      std::set<std::vector<Cell>> sets;
      for (const Placement& pl : list) {
        auto c = placement_cells(orients, pl);
        std::sort(c.begin(), c.end());
        sets.insert(c);
      }
      EXPECT_EQ(sets.size(), list.size());
    }
  }
}

TEST(Placements, MonotoneOccupancy) {
  CellSet occ;
  std::size_t last = placements_covering(kPentX, occ, {0, 0}).size();
  for (Cell c : {Cell{1, 0}, Cell{0, 1}, Cell{-1, -1}, Cell{2, 2}}) {
    occ.insert(c);
    const std::size_t now = placements_covering(kPentX, occ, {0, 0}).size();
    EXPECT_LE(now, last);
    last = now;
  }
}

TEST(Decide, MonominoCoversAnything) {
  for (const Polyomino& q : free_polyominoes(5)) {
    const Decision d = flat_cover_decide(kMono, q);
    ASSERT_EQ(d.outcome, Outcome::Coverable);
    EXPECT_EQ(d.witness->placements.size(), q.size());
    EXPECT_TRUE(verify_cover(*d.witness));
  }
}

TEST(Decide, DominoCoversX) {
  EXPECT_TRUE(brute_force_oracle(kDomino, kPentX));
  EXPECT_EQ(flat_cover_decide(kDomino, kPentX).outcome, Outcome::Coverable);
}

TEST(Decide, StainCoversItself) {
  for (const Polyomino& q : free_polyominoes(6)) EXPECT_EQ(flat_cover_decide(q, q).outcome, Outcome::Coverable);
}

TEST(Decide, AgreesWithOracleOnSmallPairs) {
  for (int s = 1; s <= 5; ++s) {
    for (const Polyomino& sticker : free_polyominoes(s)) {
      for (int t = 1; t <= 4; ++t) {
        for (const Polyomino& stain : free_polyominoes(t)) {
          const Decision d = flat_cover_decide(sticker, stain);
          ASSERT_NE(d.outcome, Outcome::Unknown);
          EXPECT_EQ(d.outcome == Outcome::Coverable, brute_force_oracle(sticker, stain))
              << render(sticker) << "vs\n" << render(stain);
          if (d.witness) EXPECT_TRUE(verify_cover(*d.witness));
        }
      }
    }
  }
}

TEST(Decide, SmallStainsAlwaysCovered) {
  // Every shape of up to 4 cells fits inside an always-coverable shape.
  std::size_t negatives = 0;
  for (const Polyomino& sticker : free_polyominoes(5)) {
    for (const Polyomino& stain : free_polyominoes(4)) {
      negatives += flat_cover_decide(sticker, stain).outcome == Outcome::NotCoverable;
    }
  }
  EXPECT_EQ(negatives, 0u);
}

TEST(Decide, BudgetGivesUnknown) {
  const Polyomino big = P("4 4\n####\n####\n####\n####");
  const Decision d = flat_cover_decide(kTromino, big, SearchBudget::nodes(1));
  EXPECT_EQ(d.outcome, Outcome::Unknown);
  EXPECT_FALSE(d.witness);
}

TEST(Decide, PrunedAndParallelAgree) {
  for (const Polyomino& sticker : free_polyominoes(5)) {
    for (const Polyomino& stain : free_polyominoes(4)) {
      const Outcome plain = flat_cover_decide(sticker, stain).outcome;
      const Decision pruned = flat_cover_decide(sticker, stain, SearchBudget::unlimited(), {2, 1});
      if (pruned.outcome != Outcome::Unknown) EXPECT_EQ(pruned.outcome, plain);
      if (pruned.witness) EXPECT_TRUE(verify_cover(*pruned.witness));
      EXPECT_EQ(flat_cover_decide(sticker, stain, SearchBudget::unlimited(), {0, 3}).outcome, plain);
    }
  }
}

TEST(Enumerate, MonominoOnMonomino) {
  const auto e = enumerate_minimal_covers(kMono, kMono);
  EXPECT_TRUE(e.complete);
  EXPECT_EQ(e.covers.size(), 1u);
}

TEST(Enumerate, DominoOnDomino) {
  // Oracle: one placement over both cells, or a disjoint pair splitting them.
  const auto e = enumerate_minimal_covers(kDomino, kDomino);
  EXPECT_TRUE(e.complete);
  std::size_t brute = 0;
  const auto orients = transforms_of(kDomino);
  std::vector<std::vector<Cell>> meet;
  for (const Placement& p : placements_covering(kDomino, {}, {0, 0})) meet.push_back(placement_cells(orients, p));
  for (const Placement& p : placements_covering(kDomino, {}, {1, 0})) {
    auto c = placement_cells(orients, p);
    if (std::find(c.begin(), c.end(), Cell{0, 0}) == c.end()) meet.push_back(c);
  }
  for (std::size_t i = 0; i < meet.size(); ++i) {
    auto has = [](const std::vector<Cell>& v, Cell c) { return std::find(v.begin(), v.end(), c) != v.end(); };
    if (has(meet[i], {0, 0}) && has(meet[i], {1, 0})) ++brute;
    for (std::size_t j = i + 1; j < meet.size(); ++j) {
      bool disjoint = std::none_of(meet[i].begin(), meet[i].end(), [&](Cell c) { return has(meet[j], c); });
      bool covers = (has(meet[i], {0, 0}) || has(meet[j], {0, 0})) && (has(meet[i], {1, 0}) || has(meet[j], {1, 0}));
      bool single = (has(meet[i], {0, 0}) && has(meet[i], {1, 0})) || (has(meet[j], {0, 0}) && has(meet[j], {1, 0}));
      if (disjoint && covers && !single) ++brute;
    }
  }
  EXPECT_EQ(e.covers.size(), brute);
}

TEST(Enumerate, UniqueAndValid) {
  const auto e = enumerate_minimal_covers(kTromino, P("2 3\n###\n.#."));
  EXPECT_TRUE(e.complete);
  std::set<std::set<std::vector<Cell>>> seen;
  for (const CoverWitness& w : e.covers) {
    EXPECT_TRUE(verify_cover(w));
    EXPECT_TRUE(seen.insert(placed_sets(w)).second);
  }
}

TEST(Enumerate, CapTruncates) {
  const auto e = enumerate_minimal_covers(kMono, kPentI, SearchBudget::unlimited(), 1);
  EXPECT_EQ(e.covers.size(), 1u);
  const auto d = enumerate_minimal_covers(kDomino, kPentI, SearchBudget::unlimited(), 2);
  EXPECT_FALSE(d.complete);
}

TEST(Verify, RejectsBadWitnesses) {
  CoverWitness overlap{kDomino, kDomino, {{0, {0, 0}}, {0, {0, 0}}}};
  EXPECT_FALSE(verify_cover(overlap));
  CoverWitness short_cover{kMono, kDomino, {{0, {0, 0}}}};
  EXPECT_FALSE(verify_cover(short_cover));
  CoverWitness stray{kMono, kMono, {{0, {0, 0}}, {0, {5, 5}}}};
  EXPECT_FALSE(verify_cover(stray));
  CoverWitness ok{kMono, kDomino, {{0, {0, 0}}, {0, {1, 0}}}};
  EXPECT_TRUE(verify_cover(ok));
}

TEST(Oracle, Guard) {
  EXPECT_THROW(brute_force_oracle(kMono, P("1 7\n#######")), std::invalid_argument);
  EXPECT_THROW(brute_force_oracle(P("1 9\n#########"), kMono), std::invalid_argument);
  EXPECT_TRUE(brute_force_oracle(kMono, kDomino));
}

TEST(Oracle, EveryStickerInACoverMeetsTheStain) {
  for (const Polyomino& stain : free_polyominoes(4)) {
    const auto e = enumerate_minimal_covers(kTromino, stain);
    for (const CoverWitness& w : e.covers) {
      for (const auto& cells : placed_sets(w)) {
        EXPECT_TRUE(std::any_of(cells.begin(), cells.end(), [&](Cell c) { return stain.contains(c); }));
      }
    }
  }
}
