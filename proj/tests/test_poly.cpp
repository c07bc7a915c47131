#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "flatcover/poly.hpp"

using namespace flatcover;

namespace {

using Pts = std::vector<std::pair<int, int>>;

Polyomino P(const char* text) { return parse_poly(text); }

Polyomino from(const Pts& pts) {
  std::vector<Cell> cells;
  for (auto [x, y] : pts) cells.push_back({x, y});
  return Polyomino::from_cells(cells);
}

// Independent oracle: redelmeier-free growth over a set of normalized point
// lists with its own symmetry handling.
Pts norm(Pts p) {
  int mx = p[0].first, my = p[0].second;
  for (auto [x, y] : p) mx = std::min(mx, x), my = std::min(my, y);
  for (auto& [x, y] : p) x -= mx, y -= my;
  std::sort(p.begin(), p.end());
  return p;
}

Pts free_key(const Pts& p) {
  Pts best;
  Pts q = p;
  for (int r = 0; r < 4; ++r) {
    for (auto& [x, y] : q) std::tie(x, y) = std::make_pair(-y, x);
    for (int m = 0; m < 2; ++m) {
      Pts img = q;
      if (m) for (auto& c : img) c.first = -c.first;
      img = norm(img);
      if (best.empty() || img < best) best = img;
    }
  }
  return best;
}

std::vector<std::size_t> oracle_counts(int max_n) {
  std::vector<std::size_t> out;
  std::set<Pts> level{{{0, 0}}};
  out.push_back(1);
  for (int n = 2; n <= max_n; ++n) {
    std::set<Pts> next;
    for (const Pts& p : level) {
      for (auto [x, y] : p) {
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          std::pair<int, int> c{x + dx, y + dy};
          if (std::find(p.begin(), p.end(), c) != p.end()) continue;
          Pts q = p;
          q.push_back(c);
          next.insert(free_key(q));
        }
      }
    }
    level = std::move(next);
    out.push_back(level.size());
  }
  return out;
}

const Polyomino kRightTromino = P("2 2\n#.\n##");

}  // namespace

TEST(Parse, Monomino) {
  const Polyomino p = P("1 1\n#");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.cells()[0], (Cell{0, 0}));
}

TEST(Parse, TopRowIsLargestY) {
  const Polyomino p = P("2 2\n#.\n##");
  EXPECT_TRUE(p.contains({0, 1}));
  EXPECT_FALSE(p.contains({1, 1}));
  EXPECT_TRUE(p.contains({1, 0}));
}

TEST(Parse, HeptominoBitmap) {
  const Polyomino p = P("4 4\n1110\n0011\n0001\n0001");
  EXPECT_EQ(p.size(), 7u);
  EXPECT_EQ(p.bounding_box(), (BoundingBox{4, 4}));
  EXPECT_TRUE(p.contains({0, 3}));
  EXPECT_TRUE(p.contains({3, 0}));
  EXPECT_FALSE(p.contains({0, 0}));
}

TEST(Parse, Errors) {
  auto kind = [](const char* text) {
    try {
      parse_poly(text);
    } catch (const PolyError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return PolyError::Kind::BadHeader;
  };
  EXPECT_EQ(kind("1 2\n#.\n#"), PolyError::Kind::DimensionMismatch);
  EXPECT_EQ(kind("2 2\n..\n.."), PolyError::Kind::Empty);
  EXPECT_EQ(kind("2 2\n#.\n.#"), PolyError::Kind::Disconnected);
  EXPECT_EQ(kind("x\n#"), PolyError::Kind::BadHeader);
  EXPECT_EQ(kind("1 1\n?"), PolyError::Kind::BadCharacter);
}

TEST(Parse, SpacesAndZerosAreEmpty) {
  EXPECT_EQ(P("2 3\n# 0\n###"), P("2 3\n#..\n###"));
}

TEST(Parse, RenderRoundTrip) {
  for (int n = 1; n <= 6; ++n) {
    for (const Polyomino& p : free_polyominoes(n)) {
      for (const Polyomino& q : transforms_of(p)) EXPECT_EQ(parse_poly(render(q)), q);
    }
  }
}

TEST(Transforms, GroupTable) {
  const Cell probe{2, 5};
  for (Transform a : Transform::all()) {
    EXPECT_EQ(a.then(a.inverse()), Transform(0));
    for (Transform b : Transform::all()) {
      EXPECT_EQ(a.then(b).apply(probe), b.apply(a.apply(probe)));
    }
  }
  std::set<std::pair<int, int>> images;
  for (Transform t : Transform::all()) images.insert({t.apply(probe).x, t.apply(probe).y});
  EXPECT_EQ(images.size(), 8u);
}

TEST(Transforms, OrbitSizes) {
  EXPECT_EQ(transforms_of(P("1 1\n#")).size(), 1u);
  EXPECT_EQ(transforms_of(P("1 2\n##")).size(), 2u);
  EXPECT_EQ(transforms_of(kRightTromino).size(), 4u);
  EXPECT_EQ(transforms_of(P("2 3\n###\n.#.")).size(), 4u);
  EXPECT_EQ(transforms_of(P("3 3\n##.\n.##\n.#.")).size(), 8u);
}

TEST(Transforms, OrbitSizeMatchesOracle) {
  for (int n = 1; n <= 6; ++n) {
    for (const Polyomino& p : free_polyominoes(n)) {
      std::set<Pts> imgs;
      Pts pts;
      for (Cell c : p.cells()) pts.push_back({c.x, c.y});
      Pts q = pts;
      for (int r = 0; r < 4; ++r) {
        for (auto& [x, y] : q) std::tie(x, y) = std::make_pair(-y, x);
        imgs.insert(norm(q));
        Pts m = q;
        for (auto& c : m) c.first = -c.first;
        imgs.insert(norm(m));
      }
      const auto list = transforms_of(p);
      EXPECT_EQ(list.size(), imgs.size());
      EXPECT_EQ(8 % list.size(), 0u);
      EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
    }
  }
}

TEST(Canonical, InvariantAndIdempotent) {
  for (int n = 1; n <= 6; ++n) {
    for (const Polyomino& p : free_polyominoes(n)) {
      const Polyomino c = canonical(p);
      EXPECT_EQ(canonical(c), c);
      for (Transform t : Transform::all()) EXPECT_EQ(canonical(transformed(p, t)), c);
    }
  }
  EXPECT_EQ(canonical(P("2 1\n#\n#")), canonical(P("1 2\n##")));
}

TEST(Canonical, FreeCountsMatchOracle) {
  const std::vector<std::size_t> expected{1, 1, 2, 5, 12, 35, 108};
  EXPECT_EQ(oracle_counts(7), expected);
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(free_polyominoes(n).size(), expected[static_cast<std::size_t>(n - 1)]) << n;
  }
}

TEST(Includes, Examples) {
  EXPECT_TRUE(includes(P("1 5\n#####").cells(), P("1 4\n####")));
  EXPECT_FALSE(includes(P("2 2\n##\n##").cells(), P("3 3\n.#.\n###\n.#.")));
  const std::vector<Cell> dominoes{{0, 0}, {1, 0}, {2, 1}, {3, 1}};
  EXPECT_FALSE(includes(dominoes, P("2 3\n.##\n##.")));
  const std::vector<Cell> s{{0, 0}, {1, 0}, {1, 1}, {2, 1}};
  EXPECT_TRUE(includes(s, P("2 3\n.##\n##.")));
  EXPECT_TRUE(includes(s, P("2 3\n##.\n.##")));
}

TEST(Includes, ChiralCountOnStaircase) {
  // Oracle: count oriented placements of the skew tetromino by direct scan.
  const std::vector<Cell> area{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 1}};
  int hits = 0;
  for (const Polyomino& o : transforms_of(P("2 3\n.##\n##."))) {
    for (int dx = -4; dx <= 4; ++dx) {
      for (int dy = -4; dy <= 4; ++dy) {
        bool ok = true;
        for (Cell c : o.cells()) {
          ok = ok && std::find(area.begin(), area.end(), Cell{c.x + dx, c.y + dy}) != area.end();
        }
        hits += ok;
      }
    }
  }
  EXPECT_EQ(hits, 1);
  EXPECT_TRUE(includes(area, P("2 3\n.##\n##.")));
}

TEST(Includes, ReflexiveAndMonotone) {
  for (const Polyomino& p : free_polyominoes(5)) {
    EXPECT_TRUE(includes(p.cells(), p));
    std::vector<Cell> bigger = p.cells();
    bigger.push_back({-3, -3});
    for (const Polyomino& q : free_polyominoes(4)) {
      if (includes(p.cells(), q)) EXPECT_TRUE(includes(bigger, q));
    }
  }
}

TEST(Includes, WitnessLiesInArea) {
  const Polyomino area = P("3 4\n####\n#..#\n####");
  auto inc = find_inclusion(area.cells(), P("2 3\n###\n#.."));
  ASSERT_TRUE(inc);
  for (Cell c : inc->image.cells()) EXPECT_TRUE(area.contains(c + inc->offset));
}

TEST(SimplyConnected, Examples) {
  EXPECT_TRUE(is_simply_connected(P("3 3\n###\n###\n###")));
  EXPECT_FALSE(is_simply_connected(P("3 3\n###\n#.#\n###")));
  EXPECT_TRUE(is_simply_connected(P("3 3\n###\n#..\n###")));
  EXPECT_FALSE(is_simply_connected(P("4 4\n####\n#..#\n#..#\n####")));
  EXPECT_TRUE(is_simply_connected(P("3 4\n####\n#..#\n#.##")));
}

TEST(Enlarge, Examples) {
  EXPECT_EQ(enlarge(P("1 1\n#"), 1), P("1 1\n#"));
  EXPECT_EQ(enlarge(P("1 1\n#"), 2), P("2 2\n##\n##"));
  const Polyomino e = enlarge(kRightTromino, 4);
  EXPECT_GE(e.width(), 4);
  EXPECT_GE(e.height(), 4);
  EXPECT_EQ(e.size(), 48u);
}

TEST(Enlarge, MirrorStructure) {
  const Polyomino p = kRightTromino;
  const Polyomino e = enlarge(p, 2);
  EXPECT_EQ(e.size(), 4 * p.size());
  EXPECT_EQ(e.width(), 2 * p.width());
  EXPECT_EQ(e.height(), 2 * p.height());
  for (Cell c : p.cells()) {
    EXPECT_TRUE(e.contains(c));
    EXPECT_TRUE(e.contains({2 * p.width() - 1 - c.x, c.y}));
    EXPECT_TRUE(e.contains({c.x, 2 * p.height() - 1 - c.y}));
  }
}

TEST(Enlarge, PreservesConnectivityAndCounts) {
  for (const Polyomino& p : free_polyominoes(5)) {
    for (int n : {1, 2, 3, 5, 9}) {
      const Polyomino e = enlarge(p, n);
      EXPECT_TRUE(is_connected(e.cells()));
      EXPECT_GE(e.width(), n);
      EXPECT_GE(e.height(), n);
      EXPECT_GE(static_cast<int>(e.size()), n);
      std::size_t k = p.size();
      while (k < e.size()) k *= 4;
      EXPECT_EQ(k, e.size());
    }
  }
}

TEST(Enlarge, Overflow) { EXPECT_THROW(enlarge(P("1 1\n#"), 1 << 30), PolyError); }

TEST(RowIndex, TopRowIsOne) {
  const Polyomino p = P("3 1\n#\n#\n#");
  EXPECT_EQ(row_index(p, {0, 2}), 1);
  EXPECT_EQ(row_index(p, {0, 0}), 3);
}

TEST(Svg, OneRectPerCell) {
  const std::string svg = render_svg(kRightTromino);
  std::size_t n = 0;
  for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++n;
  EXPECT_GE(n, 3u);
}

TEST(FromCells, Normalizes) {
  const Polyomino p = from({{5, 7}, {6, 7}});
  EXPECT_EQ(p, P("1 2\n##"));
}
