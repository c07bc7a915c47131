#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatcover/poly.hpp"
#include "flatcover/solver.hpp"

namespace flatcover::reduce2d {

// 3-Precoloring Extension on an induced subgrid. Edges join vertices at L1
// distance 1; colors are 1, 2, 3.
struct PrecolorInstance {
  std::vector<Cell> vertices;
  std::map<Cell, int> precolored;
};

using Coloring = std::map<Cell, int>;

struct ReductionOutput {
  Polyomino sticker;
  Polyomino stain;
  // Lower-left corner of each vertex block (8v) in stain coordinates.
  std::map<Cell, Cell> anchors;
  // Shift applied to raw 8v coordinates to normalize the stain.
  Cell origin;
};

// The 10x10 sticker and 8x8 stain gadgets, exactly as printed.
const Polyomino& gadget_sticker();
const Polyomino& gadget_q0();

// Color c in {1,2,3}: P, P rotated +90 degrees, P rotated -90 degrees, each
// kept in the same 10x10 box.
std::vector<Cell> colored_gadget(int color);

// Orientation index into transforms_of(gadget_sticker()) for color c.
int orientation_for_color(int color);

struct GadgetReport {
  // (1) covers of Q0: count and which color each single-sticker cover uses.
  std::size_t q0_cover_count = 0;
  std::vector<int> q0_cover_colors;
  std::vector<std::size_t> q0_cover_sizes;
  std::size_t q0_single_covers = 0;
  bool q0_centered = false;  // every single-sticker cover is a centered P_i
  // (2) covers of each P_i.
  std::array<std::size_t, 3> pi_cover_counts{};
  std::array<std::size_t, 3> pi_single_covers{};
  bool pi_centered = false;
  // (3) overlap[axis][i][j] for neighbors 8 apart along x (axis 0) or y (axis 1).
  std::array<std::array<std::array<bool, 3>, 3>, 2> overlap{};
  bool property1 = false;
  bool property2 = false;
  bool property3 = false;
  bool complete = false;  // no search hit its budget

  bool passed() const { return property1 && property2 && property3 && complete; }
};

GadgetReport check_gadget_properties(const SearchBudget& budget = SearchBudget::unlimited());

// Throws std::invalid_argument on a disconnected vertex graph or bad colors.
ReductionOutput build_instance(const PrecolorInstance& inst);

// One centered placement per vertex with orientation given by its color.
// Throws std::invalid_argument if the coloring is improper or disagrees with
// the precoloring.
CoverWitness witness_from_coloring(const PrecolorInstance& inst, const Coloring& coloring);

// Backtracking search; nullopt means unsatisfiable. Guarded to |V| <= 20.
std::optional<Coloring> brute_precoloring(const PrecolorInstance& inst);

struct RoundTripReport {
  bool satisfiable = false;
  Outcome cover = Outcome::Unknown;
  bool witness_verified = false;  // only meaningful when satisfiable
  bool agree = false;             // false when inconclusive
  bool inconclusive = false;
  std::uint64_t nodes = 0;
};

RoundTripReport roundtrip(const PrecolorInstance& inst, const SearchBudget& budget);

// ".grid3c": one "x y [color]" line per vertex; '#' starts a comment.
PrecolorInstance parse_instance(std::string_view text);
std::string format_instance(const PrecolorInstance& inst);

}  // namespace flatcover::reduce2d
