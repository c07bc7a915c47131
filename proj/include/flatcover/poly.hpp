#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace flatcover {

// A lattice square. +x is right, +y is up.
struct Cell {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(Cell, Cell) = default;
  // Row-major from the bottom row: compares y first, then x.
  friend constexpr std::strong_ordering operator<=>(Cell a, Cell b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
};

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    auto v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
             static_cast<std::uint32_t>(c.y);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    return static_cast<std::size_t>(v);
  }
};

using CellSet = std::unordered_set<Cell, CellHash>;

// Element of the dihedral group of the square. Index 0..3 are the
// counter-clockwise rotations by k quarter turns; 4..7 are the same rotation
// followed by the reflection x -> -x.
class Transform {
 public:
  static constexpr int kCount = 8;

  constexpr Transform() = default;
  constexpr explicit Transform(int index) : index_(static_cast<std::uint8_t>(index & 7)) {}

  constexpr int index() const { return index_; }
  constexpr int quarter_turns() const { return index_ & 3; }
  constexpr bool reflects() const { return index_ >= 4; }

  constexpr Cell apply(Cell c) const {
    for (int k = 0; k < quarter_turns(); ++k) c = Cell{-c.y, c.x};
    if (reflects()) c.x = -c.x;
    return c;
  }

  // The transform applying *this first and `next` second.
  Transform then(Transform next) const;
  Transform inverse() const;

  static constexpr std::array<Transform, kCount> all() {
    return {Transform(0), Transform(1), Transform(2), Transform(3),
            Transform(4), Transform(5), Transform(6), Transform(7)};
  }

  friend constexpr bool operator==(Transform, Transform) = default;

 private:
  std::uint8_t index_ = 0;
};

struct BoundingBox {
  int width = 1;
  int height = 1;
  friend constexpr bool operator==(BoundingBox, BoundingBox) = default;
};

class PolyError : public std::runtime_error {
 public:
  enum class Kind { BadHeader, DimensionMismatch, BadCharacter, Empty, Disconnected, Overflow };

  PolyError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Row-major occupancy bitmap over a polyomino's bounding box; bit x of row y
// lives in words[y * words_per_row + x / 64].
struct RowBits {
  int width = 0;
  int height = 0;
  int words_per_row = 0;
  std::vector<std::uint64_t> words;

  bool test(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return (words[static_cast<std::size_t>(y) * words_per_row + (x >> 6)] >> (x & 63)) & 1u;
  }
  std::span<const std::uint64_t> row(int y) const {
    return {words.data() + static_cast<std::size_t>(y) * words_per_row,
            static_cast<std::size_t>(words_per_row)};
  }
};

// A finite, edge-connected, non-empty cell set stored translation-normalized
// (min x = min y = 0) with cells sorted by (y, x). Immutable.
class Polyomino {
 public:
  Polyomino() = delete;

  // Normalizes and validates. Throws PolyError (Empty / Disconnected).
  static Polyomino from_cells(std::span<const Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  int width() const { return bits_.width; }
  int height() const { return bits_.height; }
  BoundingBox bounding_box() const { return {bits_.width, bits_.height}; }
  bool contains(Cell c) const { return bits_.test(c.x, c.y); }
  const RowBits& bits() const { return bits_; }

  friend bool operator==(const Polyomino& a, const Polyomino& b) { return a.cells_ == b.cells_; }
  friend std::strong_ordering operator<=>(const Polyomino& a, const Polyomino& b) {
    return a.cells_ <=> b.cells_;
  }

 private:
  explicit Polyomino(std::vector<Cell> normalized);

  std::vector<Cell> cells_;
  RowBits bits_;
};

// True iff the cells form one component under 4-adjacency (empty -> false).
bool is_connected(std::span<const Cell> cells);

// "H W" header followed by H rows; '#' or '1' is a cell, '.', '0' or ' ' is
// empty. The first body row is the top row.
Polyomino parse_poly(std::string_view text);
std::string render(const Polyomino& p);
std::string render_svg(const Polyomino& p, int unit = 10);

Polyomino transformed(const Polyomino& p, Transform t);

// Distinct normalized images under the 8 transforms, sorted by cell list.
std::vector<Polyomino> transforms_of(const Polyomino& p);

// Smallest normalized image in (y, x)-lexicographic cell-list order.
Polyomino canonical(const Polyomino& p);

struct Inclusion {
  Polyomino image;  // the oriented copy of the included shape
  Cell offset;      // image cells + offset lie inside the area
};

// Some translate of some transform of q inside area, if any. Images are
// tried in transforms_of order, anchors in area order.
std::optional<Inclusion> find_inclusion(std::span<const Cell> area, const Polyomino& q);
bool includes(std::span<const Cell> area, const Polyomino& q);

// One complement component in the bounding box inflated by one cell.
bool is_simply_connected(const Polyomino& p);

// Reflect about the right side, then about the top side, ceil(log2 n) times.
Polyomino enlarge(const Polyomino& p, int n);

// 1 for the top row of p.
int row_index(const Polyomino& p, Cell c);

// All free polyominoes of the given size in canonical form, sorted.
std::vector<Polyomino> free_polyominoes(int size);

}  // namespace flatcover
