#include "flatcover/reduce2d.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flatcover::reduce2d {
namespace {

constexpr std::string_view kStickerText =
    "10 10\n"
    "0000001000\n"
    "0110001110\n"
    "0111111110\n"
    "0011111100\n"
    "0011111100\n"
    "1111111111\n"
    "0011111100\n"
    "0111111110\n"
    "0100001110\n"
    "0000001000\n";

constexpr std::string_view kQ0Text =
    "8 8\n"
    "11000011\n"
    "01111111\n"
    "01111110\n"
    "01111110\n"
    "01111110\n"
    "01111110\n"
    "11111110\n"
    "10000011\n";

constexpr int kScale = 8;
constexpr Cell kCoreShift{-1, -1};

Cell scaled(Cell v) { return Cell{kScale * v.x, kScale * v.y}; }

bool adjacent(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1; }

void validate(const PrecolorInstance& inst) {
  if (inst.vertices.empty()) throw std::invalid_argument("instance has no vertices");
  std::set<Cell> seen;
  for (const Cell v : inst.vertices) {
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex");
  }
  for (const auto& [v, c] : inst.precolored) {
    if (!seen.contains(v)) throw std::invalid_argument("precolored vertex is not in V");
    if (c < 1 || c > 3) throw std::invalid_argument("colors must be 1, 2 or 3");
  }
  if (!is_connected(inst.vertices)) throw std::invalid_argument("vertex graph is disconnected");
}

}  // namespace

const Polyomino& gadget_sticker() {
  static const Polyomino p = parse_poly(kStickerText);
  return p;
}

const Polyomino& gadget_q0() {
  static const Polyomino q = parse_poly(kQ0Text);
  return q;
}

std::vector<Cell> colored_gadget(int color) {
  std::vector<Cell> out;
  for (const Cell c : gadget_sticker().cells()) {
    switch (color) {
      case 1:
        out.push_back(c);
        break;
      case 2:
        out.push_back(Cell{9 - c.y, c.x});
        break;
      case 3:
        out.push_back(Cell{c.y, 9 - c.x});
        break;
      default:
        throw std::invalid_argument("colors must be 1, 2 or 3");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int orientation_for_color(int color) {
  const auto images = transforms_of(gadget_sticker());
  const Polyomino target = Polyomino::from_cells(colored_gadget(color));
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == target) return static_cast<int>(i);
  }
  throw std::logic_error("gadget orientation not found");
}

GadgetReport check_gadget_properties(const SearchBudget& budget) {
  GadgetReport r;
  r.complete = true;
  const Polyomino& p = gadget_sticker();

  constexpr std::size_t kCap = 1'000'000;
  const auto q0 = enumerate_minimal_covers(p, gadget_q0(), budget, kCap);
  r.complete = r.complete && q0.complete;
  r.q0_cover_count = q0.covers.size();
  r.q0_centered = true;
  std::vector<int> colors;
  for (const CoverWitness& w : q0.covers) {
    r.q0_cover_sizes.push_back(w.placements.size());
    if (w.placements.size() != 1) continue;
    ++r.q0_single_covers;
    int color = 0;
    if (w.placements[0].offset == kCoreShift) {
      for (int c = 1; c <= 3; ++c) {
        if (w.placements[0].orientation == orientation_for_color(c)) color = c;
      }
    }
    r.q0_cover_colors.push_back(color);
    r.q0_centered = r.q0_centered && color != 0;
    colors.push_back(color);
  }
  std::sort(colors.begin(), colors.end());
  r.property1 = r.q0_cover_count == 3 && r.q0_centered && colors == std::vector<int>{1, 2, 3};

  r.pi_centered = true;
  for (int c = 1; c <= 3; ++c) {
    const Polyomino stain = Polyomino::from_cells(colored_gadget(c));
    const auto e = enumerate_minimal_covers(p, stain, budget, kCap);
    r.complete = r.complete && e.complete;
    const auto k = static_cast<std::size_t>(c - 1);
    r.pi_cover_counts[k] = e.covers.size();
    for (const CoverWitness& w : e.covers) {
      if (w.placements.size() != 1) continue;
      ++r.pi_single_covers[k];
      r.pi_centered = r.pi_centered && w.placements[0].offset == Cell{0, 0} &&
                      w.placements[0].orientation == orientation_for_color(c);
    }
  }
  r.property2 = r.pi_centered && r.pi_cover_counts == std::array<std::size_t, 3>{1, 1, 1};

  r.property3 = true;
  const std::array<Cell, 2> steps{Cell{kScale, 0}, Cell{0, kScale}};
  for (std::size_t axis = 0; axis < 2; ++axis) {
    for (int i = 1; i <= 3; ++i) {
      const auto a = colored_gadget(i);
      const CellSet left(a.begin(), a.end());
      for (int j = 1; j <= 3; ++j) {
        bool hit = false;
        for (const Cell c : colored_gadget(j)) hit = hit || left.contains(c + steps[axis]);
        r.overlap[axis][static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = hit;
        r.property3 = r.property3 && (hit == (i == j));
      }
    }
  }
  return r;
}

ReductionOutput build_instance(const PrecolorInstance& inst) {
  validate(inst);
  std::vector<Cell> raw;
  std::vector<Cell> vertices = inst.vertices;
  std::sort(vertices.begin(), vertices.end());
  for (const Cell v : vertices) {
    const Cell base = scaled(v);
    if (auto it = inst.precolored.find(v); it != inst.precolored.end()) {
      for (const Cell c : colored_gadget(it->second)) raw.push_back(c + base + kCoreShift);
    } else {
      for (const Cell c : gadget_q0().cells()) raw.push_back(c + base);
    }
  }
  Cell lo = raw.front();
  for (const Cell c : raw) lo = Cell{std::min(lo.x, c.x), std::min(lo.y, c.y)};
  const Cell origin{-lo.x, -lo.y};
  ReductionOutput out{gadget_sticker(), Polyomino::from_cells(raw), {}, origin};
  for (const Cell v : vertices) out.anchors.emplace(v, scaled(v) + origin);
  return out;
}

CoverWitness witness_from_coloring(const PrecolorInstance& inst, const Coloring& coloring) {
  validate(inst);
  for (const Cell v : inst.vertices) {
    auto it = coloring.find(v);
    if (it == coloring.end()) throw std::invalid_argument("coloring misses a vertex");
    if (it->second < 1 || it->second > 3) throw std::invalid_argument("colors must be 1, 2 or 3");
    if (auto pre = inst.precolored.find(v); pre != inst.precolored.end() && pre->second != it->second) {
      throw std::invalid_argument("coloring disagrees with the precoloring");
    }
  }
  for (const Cell u : inst.vertices) {
    for (const Cell v : inst.vertices) {
      if (adjacent(u, v) && coloring.at(u) == coloring.at(v)) {
        throw std::invalid_argument("improper coloring: adjacent vertices share a color");
      }
    }
  }
  ReductionOutput built = build_instance(inst);
  std::vector<Placement> placements;
  std::vector<Cell> vertices = inst.vertices;
  std::sort(vertices.begin(), vertices.end());
  for (const Cell v : vertices) {
    placements.push_back({orientation_for_color(coloring.at(v)), built.anchors.at(v) + kCoreShift});
  }
  return CoverWitness{built.sticker, built.stain, std::move(placements)};
}

std::optional<Coloring> brute_precoloring(const PrecolorInstance& inst) {
  if (inst.vertices.size() > 20) throw std::invalid_argument("brute_precoloring: at most 20 vertices");
  std::vector<Cell> vertices = inst.vertices;
  std::sort(vertices.begin(), vertices.end());
  Coloring color;
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == vertices.size()) return true;
    const Cell v = vertices[k];
    for (int c = 1; c <= 3; ++c) {
      if (auto pre = inst.precolored.find(v); pre != inst.precolored.end() && pre->second != c) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = !(adjacent(vertices[j], v) && color[vertices[j]] == c);
      // Uncolored-so-far neighbors that are precolored also constrain v.
      for (const auto& [u, pc] : inst.precolored) ok = ok && !(adjacent(u, v) && pc == c);
      if (!ok) continue;
      color[v] = c;
      if (go(k + 1)) return true;
      color.erase(v);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return color;
}

RoundTripReport roundtrip(const PrecolorInstance& inst, const SearchBudget& budget) {
  RoundTripReport r;
  const auto coloring = brute_precoloring(inst);
  r.satisfiable = coloring.has_value();
  const ReductionOutput built = build_instance(inst);
  const Decision d = flat_cover_decide(built.sticker, built.stain, budget);
  r.cover = d.outcome;
  r.nodes = d.nodes;
  if (coloring) r.witness_verified = verify_cover(witness_from_coloring(inst, *coloring));
  if (d.outcome == Outcome::Unknown) {
    r.inconclusive = true;
    return r;
  }
  r.agree = r.satisfiable == (d.outcome == Outcome::Coverable) && (!r.satisfiable || r.witness_verified);
  return r;
}

PrecolorInstance parse_instance(std::string_view text) {
  PrecolorInstance inst;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long x = 0, y = 0;
    if (!(ls >> x)) continue;
    if (!(ls >> y)) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'x y [color]'");
    const Cell v{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
    inst.vertices.push_back(v);
    int color = 0;
    if (ls >> color) {
      if (color < 1 || color > 3) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": color must be 1, 2 or 3");
      }
      inst.precolored[v] = color;
    }
    std::string rest;
    if (ls >> rest) throw std::invalid_argument("line " + std::to_string(line_no) + ": trailing input");
  }
  return inst;
}

std::string format_instance(const PrecolorInstance& inst) {
  std::ostringstream os;
  for (const Cell v : inst.vertices) {
    os << v.x << ' ' << v.y;
    if (auto it = inst.precolored.find(v); it != inst.precolored.end()) os << ' ' << it->second;
    os << '\n';
  }
  return os.str();
}

}  // namespace flatcover::reduce2d
