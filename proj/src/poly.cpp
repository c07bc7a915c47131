#include "flatcover/poly.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>

namespace flatcover {
namespace {

constexpr std::array<std::array<std::uint8_t, 8>, 8> make_compose_table() {
  std::array<std::array<std::uint8_t, 8>, 8> table{};
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const Transform ta(a), tb(b);
      const Cell ex = tb.apply(ta.apply({1, 0}));
      const Cell ey = tb.apply(ta.apply({0, 1}));
      for (int k = 0; k < 8; ++k) {
        const Transform tk(k);
        if (tk.apply({1, 0}) == ex && tk.apply({0, 1}) == ey) table[a][b] = static_cast<std::uint8_t>(k);
      }
    }
  }
  return table;
}

constexpr auto kCompose = make_compose_table();

std::vector<Cell> normalize(std::vector<Cell> cells) {
  std::int32_t min_x = std::numeric_limits<std::int32_t>::max();
  std::int32_t min_y = min_x;
  for (const Cell c : cells) {
    min_x = std::min(min_x, c.x);
    min_y = std::min(min_y, c.y);
  }
  for (Cell& c : cells) c = Cell{c.x - min_x, c.y - min_y};
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

Transform Transform::then(Transform next) const { return Transform(kCompose[index_][next.index_]); }

Transform Transform::inverse() const {
  for (const Transform t : all()) {
    if (then(t).index() == 0) return t;
  }
  return Transform(0);
}

bool is_connected(std::span<const Cell> cells) {
  if (cells.empty()) return false;
  CellSet remaining(cells.begin(), cells.end());
  std::vector<Cell> stack{cells.front()};
  remaining.erase(cells.front());
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      if (auto it = remaining.find(c + d); it != remaining.end()) {
        stack.push_back(*it);
        remaining.erase(it);
      }
    }
  }
  return remaining.empty();
}

Polyomino::Polyomino(std::vector<Cell> normalized) : cells_(std::move(normalized)) {
  int w = 0, h = 0;
  for (const Cell c : cells_) {
    w = std::max(w, c.x + 1);
    h = std::max(h, c.y + 1);
  }
  bits_.width = w;
  bits_.height = h;
  bits_.words_per_row = (w + 63) / 64;
  bits_.words.assign(static_cast<std::size_t>(h) * bits_.words_per_row, 0);
  for (const Cell c : cells_) {
    bits_.words[static_cast<std::size_t>(c.y) * bits_.words_per_row + (c.x >> 6)] |=
        std::uint64_t{1} << (c.x & 63);
  }
}

Polyomino Polyomino::from_cells(std::span<const Cell> cells) {
  if (cells.empty()) throw PolyError(PolyError::Kind::Empty, "polyomino has no cells");
  std::int64_t lo_x = cells.front().x, hi_x = lo_x, lo_y = cells.front().y, hi_y = lo_y;
  for (const Cell c : cells) {
    lo_x = std::min<std::int64_t>(lo_x, c.x);
    hi_x = std::max<std::int64_t>(hi_x, c.x);
    lo_y = std::min<std::int64_t>(lo_y, c.y);
    hi_y = std::max<std::int64_t>(hi_y, c.y);
  }
  if (hi_x - lo_x >= (std::int64_t{1} << 30) || hi_y - lo_y >= (std::int64_t{1} << 30)) {
    throw PolyError(PolyError::Kind::Overflow, "polyomino extent exceeds 2^30");
  }
  std::vector<Cell> norm = normalize({cells.begin(), cells.end()});
  if (!is_connected(norm)) {
    throw PolyError(PolyError::Kind::Disconnected, "cell set is not edge-connected");
  }
  return Polyomino(std::move(norm));
}

Polyomino parse_poly(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos) {
    lines.pop_back();
  }
  if (lines.empty()) throw PolyError(PolyError::Kind::BadHeader, "missing 'H W' header");

  std::istringstream header{std::string(lines.front())};
  long long h = 0, w = 0;
  std::string extra;
  if (!(header >> h >> w) || (header >> extra) || h <= 0 || w <= 0) {
    throw PolyError(PolyError::Kind::BadHeader,
                    "header must hold two positive integers, got '" + std::string(lines.front()) + "'");
  }
  if (h > (1 << 20) || w > (1 << 20)) throw PolyError(PolyError::Kind::Overflow, "grid too large");
  if (static_cast<long long>(lines.size()) - 1 != h) {
    throw PolyError(PolyError::Kind::DimensionMismatch,
                    "header says " + std::to_string(h) + " rows, found " +
                        std::to_string(lines.size() - 1));
  }

  std::vector<Cell> cells;
  for (long long row = 0; row < h; ++row) {
    std::string_view line = lines[static_cast<std::size_t>(row) + 1];
    // Trailing blanks are tolerated; a long row is an error only if it holds cells.
    if (static_cast<long long>(line.size()) > w) {
      if (line.substr(static_cast<std::size_t>(w)).find_first_not_of(" .0") != std::string_view::npos) {
        throw PolyError(PolyError::Kind::DimensionMismatch,
                        "row " + std::to_string(row + 1) + " is wider than " + std::to_string(w));
      }
      line = line.substr(0, static_cast<std::size_t>(w));
    }
    for (std::size_t x = 0; x < line.size(); ++x) {
      switch (line[x]) {
        case '#':
        case '1':
          cells.push_back(Cell{static_cast<std::int32_t>(x), static_cast<std::int32_t>(h - 1 - row)});
          break;
        case '.':
        case '0':
        case ' ':
          break;
        default:
          throw PolyError(PolyError::Kind::BadCharacter,
                          std::string("unexpected character '") + line[x] + "' in row " +
                              std::to_string(row + 1));
      }
    }
  }
  if (cells.empty()) throw PolyError(PolyError::Kind::Empty, "grid has no cells");
  return Polyomino::from_cells(cells);
}

std::string render(const Polyomino& p) {
  std::string out = std::to_string(p.height()) + " " + std::to_string(p.width()) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(p.height()) * (p.width() + 1));
  for (int y = p.height() - 1; y >= 0; --y) {
    for (int x = 0; x < p.width(); ++x) out.push_back(p.contains({x, y}) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

std::string render_svg(const Polyomino& p, int unit) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width() * unit << "\" height=\""
     << p.height() * unit << "\" viewBox=\"0 0 " << p.width() * unit << ' ' << p.height() * unit
     << "\">\n";
  for (const Cell c : p.cells()) {
    os << "  <rect x=\"" << c.x * unit << "\" y=\"" << (p.height() - 1 - c.y) * unit << "\" width=\""
       << unit << "\" height=\"" << unit << "\" fill=\"#333\" stroke=\"#fff\" stroke-width=\"0.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

Polyomino transformed(const Polyomino& p, Transform t) {
  std::vector<Cell> out;
  out.reserve(p.size());
  for (const Cell c : p.cells()) out.push_back(t.apply(c));
  return Polyomino::from_cells(out);
}

std::vector<Polyomino> transforms_of(const Polyomino& p) {
  std::vector<Polyomino> images;
  for (const Transform t : Transform::all()) images.push_back(transformed(p, t));
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return images;
}

Polyomino canonical(const Polyomino& p) {
  std::optional<Polyomino> best;
  for (const Transform t : Transform::all()) {
    Polyomino image = transformed(p, t);
    if (!best || image < *best) best.emplace(std::move(image));
  }
  return *best;
}

std::optional<Inclusion> find_inclusion(std::span<const Cell> area, const Polyomino& q) {
  if (area.size() < q.size()) return std::nullopt;
  const CellSet set(area.begin(), area.end());
  std::vector<Cell> anchors(area.begin(), area.end());
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  for (Polyomino& image : transforms_of(q)) {
    const Cell first = image.cells().front();
    for (const Cell a : anchors) {
      const Cell offset = a - first;
      bool inside = true;
      for (const Cell c : image.cells()) {
        if (!set.contains(c + offset)) {
          inside = false;
          break;
        }
      }
      if (inside) return Inclusion{std::move(image), offset};
    }
  }
  return std::nullopt;
}

bool includes(std::span<const Cell> area, const Polyomino& q) { return find_inclusion(area, q).has_value(); }

bool is_simply_connected(const Polyomino& p) {
  const int w = p.width() + 2, h = p.height() + 2;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (const Cell c : p.cells()) seen[idx(c.x + 1, c.y + 1)] = 1;
  std::vector<Cell> stack{{0, 0}};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      const Cell n = c + d;
      if (n.x < 0 || n.y < 0 || n.x >= w || n.y >= h || seen[idx(n.x, n.y)]) continue;
      seen[idx(n.x, n.y)] = 1;
      ++reached;
      stack.push_back(n);
    }
  }
  return reached + p.size() == static_cast<std::size_t>(w) * h;
}

Polyomino enlarge(const Polyomino& p, int n) {
  if (n < 1) throw std::invalid_argument("enlarge: n must be positive");
  int steps = 0;
  while ((std::int64_t{1} << steps) < n) ++steps;
  constexpr std::int64_t kMaxSide = std::int64_t{1} << 30;
  constexpr std::int64_t kMaxCells = std::int64_t{1} << 26;
  if (steps >= 30 || (std::int64_t{p.width()} << steps) >= kMaxSide || (std::int64_t{p.height()} << steps) >= kMaxSide ||
      static_cast<std::int64_t>(p.size()) > (kMaxCells >> (2 * steps))) {
    throw PolyError(PolyError::Kind::Overflow, "enlarge: result too large");
  }
  std::vector<Cell> cells = p.cells();
  cells.reserve(p.size() << (2 * steps));
  std::int64_t w = p.width(), h = p.height();
  for (int s = 0; s < steps; ++s) {
    const std::size_t m = cells.size();
    for (std::size_t i = 0; i < m; ++i) {
      cells.push_back(Cell{static_cast<std::int32_t>(2 * w - 1 - cells[i].x), cells[i].y});
    }
    w *= 2;
    const std::size_t m2 = cells.size();
    for (std::size_t i = 0; i < m2; ++i) {
      cells.push_back(Cell{cells[i].x, static_cast<std::int32_t>(2 * h - 1 - cells[i].y)});
    }
    h *= 2;
  }
  return Polyomino::from_cells(cells);
}

int row_index(const Polyomino& p, Cell c) { return p.height() - c.y; }

std::vector<Polyomino> free_polyominoes(int size) {
  if (size < 1) return {};
  std::set<Polyomino> current{Polyomino::from_cells(std::vector<Cell>{{0, 0}})};
  for (int k = 2; k <= size; ++k) {
    std::set<Polyomino> next;
    for (const Polyomino& p : current) {
      CellSet occupied(p.cells().begin(), p.cells().end());
      for (const Cell c : p.cells()) {
        for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
          if (occupied.contains(c + d)) continue;
          std::vector<Cell> grown = p.cells();
          grown.push_back(c + d);
          next.insert(canonical(Polyomino::from_cells(grown)));
        }
      }
    }
    current = std::move(next);
  }
  return {current.begin(), current.end()};
}

}  // namespace flatcover
