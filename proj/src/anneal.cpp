#include "flatcover/anneal.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "flatcover/classifier.hpp"

namespace flatcover::anneal {
namespace {

constexpr std::array<Cell, 4> kSteps{Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}};

int chebyshev(Cell c) { return std::max(std::abs(c.x), std::abs(c.y)); }

std::vector<Cell> normalized_stain(const Polyomino& stain) {
  return std::vector<Cell>(stain.cells().begin(), stain.cells().end());
}

struct Extents {
  int minx = 0, maxx = 0, miny = 0, maxy = 0, minp = 0, maxp = 0, minm = 0, maxm = 0;

  template <class Range>
  static Extents of(const Range& cells) {
    Extents e;
    bool first = true;
    for (const Cell c : cells) {
      const int p = c.x + c.y, m = c.x - c.y;
      if (first) {
        e = Extents{c.x, c.x, c.y, c.y, p, p, m, m};
        first = false;
        continue;
      }
      e.minx = std::min(e.minx, c.x);
      e.maxx = std::max(e.maxx, c.x);
      e.miny = std::min(e.miny, c.y);
      e.maxy = std::max(e.maxy, c.y);
      e.minp = std::min(e.minp, p);
      e.maxp = std::max(e.maxp, p);
      e.minm = std::min(e.minm, m);
      e.maxm = std::max(e.maxm, m);
    }
    return e;
  }

  // Within d of a bounding-box side or of an outermost 45-degree line.
  bool near(Cell c, int d) const {
    const int p = c.x + c.y, m = c.x - c.y;
    return c.x - minx < d || maxx - c.x < d || c.y - miny < d || maxy - c.y < d || p - minp < d || maxp - p < d ||
           m - minm < d || maxm - m < d;
  }

  friend bool operator==(const Extents&, const Extents&) = default;
};

std::int64_t fixed(double w) { return std::llround(w * static_cast<double>(kFixedScale)); }

std::int64_t blocking_share(std::int64_t wk, std::int64_t k) { return wk / (1 + k); }

PenaltyBreakdown make_breakdown(std::int64_t one, std::int64_t base, std::int64_t side, std::int64_t blk,
                                const PenaltyWeights& w) {
  PenaltyBreakdown b;
  b.one_sticker_covers = one;
  b.two_sticker_covers = base;
  const std::int64_t wb = fixed(w.base), ws = fixed(w.side);
  b.side_surcharge = static_cast<double>(side * ws) / kFixedScale;
  b.blocking_surcharge = static_cast<double>(blk) / kFixedScale;
  b.total_fixed = base * wb + side * ws + blk + one * kOneStickerMultiplier * wb;
  b.total = static_cast<double>(b.total_fixed) / kFixedScale;
  return b;
}

struct Tables {
  std::array<int, 8> inv{};
  std::array<std::array<int, 8>, 8> then{};  // then[a][b]: a first, b second
  Tables() {
    for (int a = 0; a < 8; ++a) {
      inv[static_cast<std::size_t>(a)] = Transform(a).inverse().index();
      for (int b = 0; b < 8; ++b) {
        then[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = Transform(a).then(Transform(b)).index();
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

// ---------------------------------------------------------------- Candidate

bool Candidate::contains(Cell c) const { return std::binary_search(cells.begin(), cells.end(), c); }

bool Candidate::in_core(Cell c) const { return chebyshev(c) <= core_radius; }

std::vector<Cell> Candidate::unit_of(Cell c) const {
  if (in_core(c)) return {c};
  std::vector<Cell> out;
  for (const Transform t : Transform::all()) out.push_back(t.apply(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Cell> Candidate::core() const {
  std::vector<Cell> out;
  for (const Cell c : cells) {
    if (in_core(c)) out.push_back(c);
  }
  return out;
}

std::vector<Cell> Candidate::domain() const {
  std::vector<Cell> out;
  for (const Cell c : cells) {
    if (!in_core(c) && c.y >= 0 && c.y <= c.x) out.push_back(c);
  }
  return out;
}

Polyomino Candidate::shape() const { return Polyomino::from_cells(cells); }

std::uint64_t Candidate::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ULL;
    }
  };
  for (const Cell c : cells) {
    mix(static_cast<std::uint32_t>(c.x));
    mix(static_cast<std::uint32_t>(c.y));
  }
  return h;
}

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::AddRemove:
      return "add-remove";
    case MoveKind::Flip2:
      return "flip-2x2";
    case MoveKind::Flip3:
      return "flip-3x3";
    case MoveKind::Swap:
      return "swap";
  }
  return "?";
}

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::Empty:
      return "empty";
    case Rejection::Disconnected:
      return "disconnected";
    case Rejection::Cyclic:
      return "cyclic";
    case Rejection::Hole:
      return "hole";
    case Rejection::IncludesStain:
      return "includes-stain";
    case Rejection::NoOp:
      return "no-op";
    case Rejection::OutOfRange:
      return "out-of-range";
  }
  return "?";
}

std::optional<Rejection> check_candidate(const Candidate& candidate, const Polyomino& stain) {
  const auto& cells = candidate.cells;
  if (cells.empty()) return Rejection::Empty;
  for (const Cell c : cells) {
    if (chebyshev(c) > candidate.radius) return Rejection::OutOfRange;
  }
  if (!is_connected(cells)) return Rejection::Disconnected;
  std::size_t edges = 0;
  for (const Cell c : cells) {
    if (candidate.contains(c + Cell{1, 0})) ++edges;
    if (candidate.contains(c + Cell{0, 1})) ++edges;
  }
  if (edges != cells.size() - 1) return Rejection::Cyclic;
  if (!is_simply_connected(candidate.shape())) return Rejection::Hole;
  if (stain.size() <= cells.size() && includes(cells, stain)) return Rejection::IncludesStain;
  return std::nullopt;
}

bool is_symmetric_outside_core(const Candidate& candidate) {
  for (const Cell c : candidate.cells) {
    if (candidate.in_core(c)) continue;
    for (const Transform t : Transform::all()) {
      if (!candidate.contains(t.apply(c))) return false;
    }
  }
  return true;
}

namespace {

// Shape cells plus their 4-neighbors, sorted.
std::vector<Cell> move_pool(const Candidate& c) {
  std::vector<Cell> pool(c.cells);
  for (const Cell x : c.cells) {
    for (const Cell d : kSteps) pool.push_back(x + d);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

Move propose_move(const Candidate& candidate, std::mt19937_64& rng, const std::array<double, kMoveKinds>& kind_weights) {
  std::discrete_distribution<int> kinds(kind_weights.begin(), kind_weights.end());
  Move m;
  m.kind = static_cast<MoveKind>(kinds(rng));
  std::vector<Cell> pool = move_pool(candidate);
  if (pool.empty()) pool.push_back(Cell{0, 0});
  switch (m.kind) {
    case MoveKind::AddRemove: {
      const Cell c = pick(pool, rng);
      m.squares = {c};
      m.states = {!candidate.contains(c)};
      break;
    }
    case MoveKind::Flip2:
    case MoveKind::Flip3: {
      const int k = m.kind == MoveKind::Flip2 ? 2 : 3;
      std::uniform_int_distribution<int> off(-(k - 1), 0);
      const Cell base = pick(pool, rng);
      const Cell corner = base + Cell{off(rng), off(rng)};
      std::bernoulli_distribution coin(0.5);
      for (int dy = 0; dy < k; ++dy) {
        for (int dx = 0; dx < k; ++dx) {
          m.squares.push_back(corner + Cell{dx, dy});
          m.states.push_back(coin(rng));
        }
      }
      break;
    }
    case MoveKind::Swap: {
      const Cell a = pick(pool, rng);
      const Cell b = pick(pool, rng);
      m.squares = {a, b};
      m.states = {candidate.contains(b), candidate.contains(a)};
      break;
    }
  }
  return m;
}

namespace {

// Target state of every cell touched by the move, or a rejection.
std::variant<std::map<Cell, bool>, Rejection> move_targets(const Candidate& candidate, const Move& move) {
  std::map<Cell, bool> target;
  if (move.kind == MoveKind::Swap) {
    const auto ua = candidate.unit_of(move.squares.at(0));
    const auto ub = candidate.unit_of(move.squares.at(1));
    if (ua == ub || move.states.at(0) == move.states.at(1)) return Rejection::NoOp;
  }
  for (std::size_t i = 0; i < move.squares.size(); ++i) {
    for (const Cell c : candidate.unit_of(move.squares[i])) target[c] = move.states.at(i);
  }
  for (auto it = target.begin(); it != target.end();) {
    if (candidate.contains(it->first) == it->second) {
      it = target.erase(it);
    } else {
      ++it;
    }
  }
  if (target.empty()) return Rejection::NoOp;
  for (const auto& [c, on] : target) {
    if (on && chebyshev(c) > candidate.radius) return Rejection::OutOfRange;
  }
  return target;
}

Candidate with_changes(const Candidate& candidate, const std::map<Cell, bool>& target) {
  Candidate next = candidate;
  std::vector<Cell> cells;
  for (const Cell c : candidate.cells) {
    auto it = target.find(c);
    if (it == target.end() || it->second) cells.push_back(c);
  }
  for (const auto& [c, on] : target) {
    if (on) cells.push_back(c);
  }
  std::sort(cells.begin(), cells.end());
  next.cells = std::move(cells);
  return next;
}

}  // namespace

MoveResult apply_move(const Candidate& candidate, const Move& move, const Polyomino& stain) {
  auto t = move_targets(candidate, move);
  if (auto* r = std::get_if<Rejection>(&t)) return MoveResult{std::nullopt, *r};
  Candidate next = with_changes(candidate, std::get<std::map<Cell, bool>>(t));
  if (auto r = check_candidate(next, stain)) return MoveResult{std::nullopt, *r};
  return MoveResult{std::move(next), std::nullopt};
}

// ---------------------------------------------------------------- scratch penalty

PenaltyBreakdown penalty(const Candidate& candidate, const Polyomino& stain, const PenaltyWeights& weights) {
  const std::vector<Cell> s = normalized_stain(stain);
  const std::size_t n = s.size();
  if (n > 16) throw std::invalid_argument("penalty: stain larger than 16 cells");
  const std::uint32_t full = (1u << n) - 1;
  const CellSet shape(candidate.cells.begin(), candidate.cells.end());
  CellSet frontier;
  for (const Cell c : candidate.cells) {
    for (const Cell d : kSteps) {
      const Cell x = c + d;
      if (shape.contains(x)) continue;
      int k = 0;
      for (const Cell e : kSteps) k += shape.contains(x + e) ? 1 : 0;
      if (k == 1) frontier.insert(x);
    }
  }
  const Extents ext = Extents::of(candidate.cells);

  struct Window {
    int s;
    Cell t;
    std::uint32_t mask;
    int near;
  };
  std::set<std::pair<int, Cell>> seen;
  std::map<std::uint32_t, std::vector<Window>> by_mask;
  std::int64_t one = 0;
  for (int o = 0; o < 8; ++o) {
    const Transform tr(o);
    for (const Cell p : candidate.cells) {
      for (const Cell sc : s) {
        const Cell t = p - tr.apply(sc);
        if (!seen.insert({o, t}).second) continue;
        Window w{o, t, 0, 1};
        for (std::size_t i = 0; i < n; ++i) {
          const Cell c = tr.apply(s[i]) + t;
          if (shape.contains(c)) {
            w.mask |= 1u << i;
            if (!ext.near(c, weights.side_distance)) w.near = 0;
          }
        }
        if (w.mask == full) ++one;
        by_mask[w.mask].push_back(w);
      }
    }
  }

  // Relative motion g = h1 o h2^-1 of the second sticker in the first's frame.
  std::map<std::pair<int, Cell>, std::pair<std::int64_t, std::int64_t>> rel;
  for (const auto& [mask, group] : by_mask) {
    if (!(mask & 1u) || mask == full) continue;
    auto other = by_mask.find(full ^ mask);
    if (other == by_mask.end()) continue;
    for (const Window& a : group) {
      for (const Window& b : other->second) {
        const Transform u = Transform(b.s).inverse().then(Transform(a.s));
        const Cell f = a.t - u.apply(b.t);
        auto& e = rel[{u.index(), f}];
        e.first += 1;
        e.second += a.near + b.near;
      }
    }
  }

  const std::int64_t wk = fixed(weights.blocking);
  std::int64_t base = 0, side = 0, blk = 0;
  for (const auto& [g, counts] : rel) {
    const Transform u(g.first);
    const Cell f = g.second;
    bool overlap = false;
    for (const Cell b : candidate.cells) {
      if (shape.contains(u.apply(b) + f)) {
        overlap = true;
        break;
      }
    }
    if (overlap) continue;
    const Transform ui = u.inverse();
    const Cell fi = Cell{0, 0} - ui.apply(f);
    std::int64_t k = 0;
    for (const Cell b : candidate.cells) {
      if (frontier.contains(u.apply(b) + f)) ++k;
      if (frontier.contains(ui.apply(b) + fi)) ++k;
    }
    base += counts.first;
    side += counts.second;
    blk += counts.first * blocking_share(wk, k);
  }
  return make_breakdown(one, base, side, blk, weights);
}

// ---------------------------------------------------------------- tracker

struct PenaltyTracker::Impl {
  PenaltyWeights w;
  std::int64_t wk = 0;
  int radius = 0;
  int G = 0;  // padded grid radius
  int GS = 0;
  std::vector<Cell> stain;
  std::uint32_t full = 0;
  int T = 0, WT = 0, FT = 0, FD = 0;

  std::vector<std::uint8_t> occ, nb;
  std::vector<std::int32_t> ppos, fpos;
  std::vector<Cell> plist, flist;

  std::vector<std::uint32_t> wmask;
  std::vector<std::uint8_t> wnear;
  std::vector<std::int32_t> wgpos;
  std::vector<std::vector<std::int32_t>> groups;

  struct Contrib {
    std::int64_t base = 0, side = 0, blk = 0;
  };
  std::vector<std::int32_t> D, E;
  std::vector<std::int64_t> mult, S1;
  std::vector<Contrib> contrib;
  std::vector<std::uint8_t> dirty_flag;
  std::vector<std::int32_t> dirty;

  std::int64_t count1 = 0, base_sum = 0, side_sum = 0, blk_sum = 0;
  Extents ext;

  std::size_t gidx(Cell c) const { return static_cast<std::size_t>((c.y + G) * GS + (c.x + G)); }
  std::int32_t widx(int s, Cell t) const { return (s * WT + (t.y + T)) * WT + (t.x + T); }
  std::int32_t pidx(int u, Cell f) const { return (u * FD + (f.y + FT)) * FD + (f.x + FT); }
  std::pair<int, Cell> wdecode(std::int32_t wi) const {
    const int x = wi % WT - T;
    const int y = (wi / WT) % WT - T;
    return {wi / (WT * WT), Cell{x, y}};
  }
  std::int32_t pinverse(std::int32_t gi) const {
    const int u = gi / (FD * FD);
    const Cell f{gi % FD - FT, (gi / FD) % FD - FT};
    const Transform ui = Transform(u).inverse();
    return pidx(ui.index(), Cell{0, 0} - ui.apply(f));
  }

  void mark(std::int32_t gi) {
    if (!dirty_flag[static_cast<std::size_t>(gi)]) {
      dirty_flag[static_cast<std::size_t>(gi)] = 1;
      dirty.push_back(gi);
    }
  }

  void recompute(std::int32_t gi) {
    const auto i = static_cast<std::size_t>(gi);
    Contrib& c = contrib[i];
    base_sum -= c.base;
    side_sum -= c.side;
    blk_sum -= c.blk;
    c = Contrib{};
    if (mult[i] != 0 && D[i] == 0) {
      const std::int64_t k = E[i] + E[static_cast<std::size_t>(pinverse(gi))];
      c.base = mult[i];
      c.side = S1[i];
      c.blk = mult[i] * blocking_share(wk, k);
    }
    base_sum += c.base;
    side_sum += c.side;
    blk_sum += c.blk;
  }

  void flush() {
    for (const std::int32_t gi : dirty) {
      dirty_flag[static_cast<std::size_t>(gi)] = 0;
      recompute(gi);
    }
    dirty.clear();
  }

  std::int32_t pair_index(std::int32_t first, std::int32_t second) const {
    const auto [s1, t1] = wdecode(first);
    const auto [s2, t2] = wdecode(second);
    const int u = tables().then[static_cast<std::size_t>(tables().inv[static_cast<std::size_t>(s2)])]
                               [static_cast<std::size_t>(s1)];
    return pidx(u, t1 - Transform(u).apply(t2));
  }

  std::uint8_t compute_near(std::int32_t wi) const {
    const auto [s, t] = wdecode(wi);
    const Transform tr(s);
    const std::uint32_t m = wmask[static_cast<std::size_t>(wi)];
    for (std::size_t i = 0; i < stain.size(); ++i) {
      if ((m >> i) & 1u) {
        if (!ext.near(tr.apply(stain[i]) + t, w.side_distance)) return 0;
      }
    }
    return 1;
  }

  void pairs(std::int32_t wi, std::uint32_t m, std::int64_t delta) {
    if (m == full) return;
    for (const std::int32_t other : groups[full ^ m]) {
      const bool first = (m & 1u) != 0;
      const std::int32_t a = first ? wi : other;
      const std::int32_t b = first ? other : wi;
      const std::int32_t gi = pair_index(a, b);
      mult[static_cast<std::size_t>(gi)] += delta;
      S1[static_cast<std::size_t>(gi)] += delta * (wnear[static_cast<std::size_t>(a)] + wnear[static_cast<std::size_t>(b)]);
      mark(gi);
    }
  }

  void set_mask(std::int32_t wi, std::uint32_t m) {
    const auto i = static_cast<std::size_t>(wi);
    const std::uint32_t old = wmask[i];
    if (old == m) return;
    if (old) {
      pairs(wi, old, -1);
      auto& g = groups[old];
      const std::int32_t pos = wgpos[i];
      g[static_cast<std::size_t>(pos)] = g.back();
      wgpos[static_cast<std::size_t>(g.back())] = pos;
      g.pop_back();
      if (old == full) --count1;
    }
    wmask[i] = m;
    if (m) {
      wnear[i] = compute_near(wi);
      wgpos[i] = static_cast<std::int32_t>(groups[m].size());
      groups[m].push_back(wi);
      if (m == full) ++count1;
      pairs(wi, m, +1);
    }
  }

  void add_E_for_frontier(Cell x, int delta) {
    for (int u = 0; u < 8; ++u) {
      const Transform tr(u);
      for (const Cell b : plist) {
        const std::int32_t gi = pidx(u, x - tr.apply(b));
        E[static_cast<std::size_t>(gi)] += delta;
        mark(gi);
        mark(pinverse(gi));
      }
    }
  }

  void add_E_for_cell(Cell b, int delta) {
    for (int u = 0; u < 8; ++u) {
      const Cell ub = Transform(u).apply(b);
      for (const Cell x : flist) {
        const std::int32_t gi = pidx(u, x - ub);
        E[static_cast<std::size_t>(gi)] += delta;
        mark(gi);
        mark(pinverse(gi));
      }
    }
  }

  void add_D_for_cell(Cell c, int delta) {
    for (int u = 0; u < 8; ++u) {
      const Transform tr(u);
      const Cell uc = tr.apply(c);
      for (const Cell b : plist) {
        const std::int32_t g1 = pidx(u, c - tr.apply(b));
        D[static_cast<std::size_t>(g1)] += delta;
        mark(g1);
        if (b != c) {
          const std::int32_t g2 = pidx(u, b - uc);
          D[static_cast<std::size_t>(g2)] += delta;
          mark(g2);
        }
      }
    }
  }

  void frontier_enter(Cell x) {
    add_E_for_frontier(x, +1);
    fpos[gidx(x)] = static_cast<std::int32_t>(flist.size());
    flist.push_back(x);
  }

  void frontier_leave(Cell x) {
    add_E_for_frontier(x, -1);
    const std::int32_t pos = fpos[gidx(x)];
    flist[static_cast<std::size_t>(pos)] = flist.back();
    fpos[gidx(flist.back())] = pos;
    flist.pop_back();
    fpos[gidx(x)] = -1;
  }

  void toggle_windows(Cell c) {
    for (int s = 0; s < 8; ++s) {
      const Transform tr(s);
      for (std::size_t i = 0; i < stain.size(); ++i) {
        const std::int32_t wi = widx(s, c - tr.apply(stain[i]));
        set_mask(wi, wmask[static_cast<std::size_t>(wi)] ^ (1u << i));
      }
    }
  }

  void add_cell(Cell c) {
    const std::size_t gc = gidx(c);
    if (fpos[gc] >= 0) frontier_leave(c);
    occ[gc] = 1;
    ppos[gc] = static_cast<std::int32_t>(plist.size());
    plist.push_back(c);
    add_D_for_cell(c, +1);
    add_E_for_cell(c, +1);
    toggle_windows(c);
    for (const Cell d : kSteps) {
      const Cell n = c + d;
      const std::size_t gn = gidx(n);
      ++nb[gn];
      if (occ[gn]) continue;
      if (nb[gn] == 1) frontier_enter(n);
      if (nb[gn] == 2) frontier_leave(n);
    }
  }

  void remove_cell(Cell c) {
    const std::size_t gc = gidx(c);
    toggle_windows(c);
    add_E_for_cell(c, -1);
    add_D_for_cell(c, -1);
    const std::int32_t pos = ppos[gc];
    plist[static_cast<std::size_t>(pos)] = plist.back();
    ppos[gidx(plist.back())] = pos;
    plist.pop_back();
    ppos[gc] = -1;
    occ[gc] = 0;
    for (const Cell d : kSteps) {
      const Cell n = c + d;
      const std::size_t gn = gidx(n);
      --nb[gn];
      if (occ[gn]) continue;
      if (nb[gn] == 1) frontier_enter(n);
      if (nb[gn] == 0) frontier_leave(n);
    }
    if (nb[gc] == 1) frontier_enter(c);
  }

  void refresh_extents() {
    const Extents now = Extents::of(plist);
    if (now == ext) return;
    ext = now;
    for (std::uint32_t m = 1; m < full; ++m) {
      for (const std::int32_t wi : groups[m]) {
        const auto i = static_cast<std::size_t>(wi);
        const std::uint8_t nn = compute_near(wi);
        if (nn == wnear[i]) continue;
        const std::int64_t delta = static_cast<std::int64_t>(nn) - wnear[i];
        for (const std::int32_t other : groups[full ^ m]) {
          const std::int32_t gi = (m & 1u) ? pair_index(wi, other) : pair_index(other, wi);
          S1[static_cast<std::size_t>(gi)] += delta;
          mark(gi);
        }
        wnear[i] = nn;
      }
    }
  }
};

PenaltyTracker::PenaltyTracker(const Candidate& candidate, const Polyomino& stain, const PenaltyWeights& weights)
    : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.w = weights;
  m.wk = fixed(weights.blocking);
  m.radius = candidate.radius;
  m.G = candidate.radius + 2;
  m.GS = 2 * m.G + 1;
  m.stain = normalized_stain(stain);
  if (m.stain.size() > 16) throw std::invalid_argument("penalty: stain larger than 16 cells");
  m.full = (1u << m.stain.size()) - 1;
  const int span = std::max(stain.width(), stain.height());
  m.T = m.G + span;
  m.WT = 2 * m.T + 1;
  m.FT = 2 * m.T;
  m.FD = 2 * m.FT + 1;
  const auto grid = static_cast<std::size_t>(m.GS) * static_cast<std::size_t>(m.GS);
  m.occ.assign(grid, 0);
  m.nb.assign(grid, 0);
  m.ppos.assign(grid, -1);
  m.fpos.assign(grid, -1);
  const auto windows = static_cast<std::size_t>(8) * static_cast<std::size_t>(m.WT) * static_cast<std::size_t>(m.WT);
  m.wmask.assign(windows, 0);
  m.wnear.assign(windows, 0);
  m.wgpos.assign(windows, -1);
  m.groups.assign(static_cast<std::size_t>(m.full) + 1, {});
  const auto rel = static_cast<std::size_t>(8) * static_cast<std::size_t>(m.FD) * static_cast<std::size_t>(m.FD);
  m.D.assign(rel, 0);
  m.E.assign(rel, 0);
  m.mult.assign(rel, 0);
  m.S1.assign(rel, 0);
  m.contrib.assign(rel, {});
  m.dirty_flag.assign(rel, 0);
  for (const Cell c : candidate.cells) {
    if (chebyshev(c) > m.radius) throw std::invalid_argument("candidate cell outside the grid");
  }
  if (!candidate.cells.empty()) m.ext = Extents::of(candidate.cells);
  for (const Cell c : candidate.cells) m.add_cell(c);
  m.refresh_extents();
  m.flush();
}

PenaltyTracker::~PenaltyTracker() = default;

void PenaltyTracker::set_cells(std::span<const Cell> cells, const std::vector<bool>& states) {
  Impl& m = *impl_;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell c = cells[i];
    if (chebyshev(c) > m.radius) throw std::invalid_argument("cell outside the grid");
    const bool on = m.occ[m.gidx(c)] != 0;
    if (on == states[i]) continue;
    if (states[i]) {
      m.add_cell(c);
    } else {
      m.remove_cell(c);
    }
  }
  if (!m.plist.empty()) m.refresh_extents();
  m.flush();
}

PenaltyBreakdown PenaltyTracker::breakdown() const {
  const Impl& m = *impl_;
  return make_breakdown(m.count1, m.base_sum, m.side_sum, m.blk_sum, m.w);
}

// ---------------------------------------------------------------- params

void validate(const SearchParams& p) {
  if (!(p.cooling_rate > 0 && p.cooling_rate < 1)) throw std::invalid_argument("cooling_rate must lie in (0, 1)");
  if (p.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (p.weights.base <= 0) throw std::invalid_argument("base_weight must be positive");
  if (p.weights.side < 0 || p.weights.blocking < 0) throw std::invalid_argument("weights must be non-negative");
  if (p.weights.side_distance < 0) throw std::invalid_argument("side_distance must be non-negative");
  if (p.interference_depth < 0) throw std::invalid_argument("interference_depth must be non-negative");
  if (p.core_radius < 0 || p.grid_radius < 1 || p.core_radius > p.grid_radius) {
    throw std::invalid_argument("need 0 <= core_radius <= grid_radius");
  }
  if (p.init_cells < 1) throw std::invalid_argument("init_cells must be positive");
  if (p.min_cells < 0 || p.min_cells > p.init_cells) throw std::invalid_argument("need 0 <= min_cells <= init_cells");
  for (const double k : p.move_weights) {
    if (k < 0) throw std::invalid_argument("move weights must be non-negative");
  }
  if (std::all_of(p.move_weights.begin(), p.move_weights.end(), [](double k) { return k == 0; })) {
    throw std::invalid_argument("at least one move weight must be positive");
  }
  if (p.coverable_penalty < 0) throw std::invalid_argument("coverable_penalty must be non-negative");
  if (p.jobs < 1) throw std::invalid_argument("jobs must be positive");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T v{};
  std::string rest;
  if (!(in >> v) || (in >> rest)) throw std::invalid_argument(key + ": bad value '" + value + "'");
  return v;
}

}  // namespace

SearchParams parse_params(std::string_view text, SearchParams p) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "initial_temperature") {
      p.initial_temperature = parse_number<double>(key, value);
    } else if (key == "cooling_rate") {
      p.cooling_rate = parse_number<double>(key, value);
    } else if (key == "steps") {
      p.steps = parse_number<std::uint64_t>(key, value);
    } else if (key == "restarts") {
      p.restarts = parse_number<int>(key, value);
    } else if (key == "seed") {
      p.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "base_weight") {
      p.weights.base = parse_number<double>(key, value);
    } else if (key == "side_weight") {
      p.weights.side = parse_number<double>(key, value);
    } else if (key == "blocking_weight") {
      p.weights.blocking = parse_number<double>(key, value);
    } else if (key == "side_distance") {
      p.weights.side_distance = parse_number<int>(key, value);
    } else if (key == "interference_depth") {
      p.interference_depth = parse_number<int>(key, value);
    } else if (key == "core_radius") {
      p.core_radius = parse_number<int>(key, value);
    } else if (key == "grid_radius") {
      p.grid_radius = parse_number<int>(key, value);
    } else if (key == "init_cells") {
      p.init_cells = parse_number<int>(key, value);
    } else if (key == "min_cells") {
      p.min_cells = parse_number<int>(key, value);
    } else if (key == "move_weights") {
      std::istringstream ws(value);
      for (double& k : p.move_weights) {
        if (!(ws >> k)) throw std::invalid_argument("move_weights: expected four numbers");
      }
      std::string rest;
      if (ws >> rest) throw std::invalid_argument("move_weights: expected four numbers");
    } else if (key == "coverable_penalty") {
      p.coverable_penalty = parse_number<double>(key, value);
    } else if (key == "verify_nodes") {
      p.verify_budget.max_nodes = parse_number<std::uint64_t>(key, value);
    } else if (key == "verify_seconds") {
      p.verify_budget.max_time = std::chrono::milliseconds(
          static_cast<std::int64_t>(std::llround(parse_number<double>(key, value) * 1000)));
    } else if (key == "log_interval") {
      p.log_interval = parse_number<std::uint64_t>(key, value);
    } else if (key == "checkpoint_interval") {
      p.checkpoint_interval = parse_number<std::uint64_t>(key, value);
    } else if (key == "checkpoint") {
      p.checkpoint = value;
    } else if (key == "results_dir") {
      p.results_dir = value;
    } else if (key == "stain_name") {
      p.stain_name = value;
    } else if (key == "jobs") {
      p.jobs = parse_number<int>(key, value);
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate(p);
  return p;
}

std::string format_params(const SearchParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "initial_temperature = " << p.initial_temperature << '\n'
     << "cooling_rate = " << p.cooling_rate << '\n'
     << "steps = " << p.steps << '\n'
     << "restarts = " << p.restarts << '\n'
     << "seed = " << p.seed << '\n'
     << "base_weight = " << p.weights.base << '\n'
     << "side_weight = " << p.weights.side << '\n'
     << "blocking_weight = " << p.weights.blocking << '\n'
     << "side_distance = " << p.weights.side_distance << '\n'
     << "interference_depth = " << p.interference_depth << '\n'
     << "core_radius = " << p.core_radius << '\n'
     << "grid_radius = " << p.grid_radius << '\n'
     << "init_cells = " << p.init_cells << '\n'
     << "min_cells = " << p.min_cells << '\n'
     << "move_weights = " << p.move_weights[0] << ' ' << p.move_weights[1] << ' ' << p.move_weights[2] << ' '
     << p.move_weights[3] << '\n'
     << "coverable_penalty = " << p.coverable_penalty << '\n';
  if (p.verify_budget.max_nodes) os << "verify_nodes = " << *p.verify_budget.max_nodes << '\n';
  if (p.verify_budget.max_time) os << "verify_seconds = " << p.verify_budget.max_time->count() / 1000.0 << '\n';
  os << "log_interval = " << p.log_interval << '\n' << "checkpoint_interval = " << p.checkpoint_interval << '\n';
  if (!p.checkpoint.empty()) os << "checkpoint = " << p.checkpoint.string() << '\n';
  if (!p.results_dir.empty()) os << "results_dir = " << p.results_dir.string() << '\n';
  os << "stain_name = " << p.stain_name << '\n' << "jobs = " << p.jobs << '\n';
  return os.str();
}

// ---------------------------------------------------------------- search

namespace {

struct ChainState {
  int chain = 0;
  std::uint64_t step = 0;
  double temperature = 1;
  std::mt19937_64 rng;
  Candidate current;
  Candidate best;
  double best_energy = 0;
  std::set<std::uint64_t> coverable;  // hashes of zero-penalty shapes the solver covered
  std::uint64_t verifications = 0;
};

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_cells(std::ostream& os, const char* key, const std::vector<Cell>& cells) {
  os << key << ' ' << cells.size();
  for (const Cell c : cells) os << ' ' << c.x << ' ' << c.y;
  os << '\n';
}

std::vector<Cell> read_cells(std::istream& in, const char* key) {
  std::string word;
  std::size_t n = 0;
  if (!(in >> word >> n) || word != key) throw std::runtime_error(std::string("checkpoint: expected ") + key);
  std::vector<Cell> cells(n);
  for (Cell& c : cells) {
    if (!(in >> c.x >> c.y)) throw std::runtime_error("checkpoint: truncated cell list");
  }
  return cells;
}

void save_checkpoint(const std::filesystem::path& path, const ChainState& st) {
  std::ostringstream os;
  os << "flatcover-checkpoint 1\n"
     << "chain " << st.chain << '\n'
     << "step " << st.step << '\n'
     << "temperature " << format_double("%a", st.temperature) << '\n'
     << "best_energy " << format_double("%a", st.best_energy) << '\n'
     << "verifications " << st.verifications << '\n'
     << "radius " << st.current.radius << ' ' << st.current.core_radius << '\n'
     << "rng " << st.rng << '\n';
  write_cells(os, "cells", st.current.cells);
  write_cells(os, "best", st.best.cells);
  os << "coverable " << st.coverable.size();
  for (const auto h : st.coverable) os << ' ' << h;
  os << '\n';
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << os.str();
  }
  std::filesystem::rename(tmp, path);
}

ChainState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  ChainState st;
  std::string word, value;
  int version = 0;
  if (!(in >> word >> version) || word != "flatcover-checkpoint" || version != 1) {
    throw std::runtime_error("checkpoint: bad magic line");
  }
  auto expect = [&](const char* key) {
    if (!(in >> word) || word != key) throw std::runtime_error(std::string("checkpoint: expected ") + key);
  };
  expect("chain");
  in >> st.chain;
  expect("step");
  in >> st.step;
  expect("temperature");
  in >> value;
  st.temperature = std::strtod(value.c_str(), nullptr);
  expect("best_energy");
  in >> value;
  st.best_energy = std::strtod(value.c_str(), nullptr);
  expect("verifications");
  in >> st.verifications;
  expect("radius");
  in >> st.current.radius >> st.current.core_radius;
  expect("rng");
  in >> st.rng;
  st.current.cells = read_cells(in, "cells");
  st.best = st.current;
  st.best.cells = read_cells(in, "best");
  expect("coverable");
  std::size_t n = 0;
  in >> n;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t h = 0;
    in >> h;
    st.coverable.insert(h);
  }
  if (!in) throw std::runtime_error("checkpoint: truncated");
  return st;
}

// Loop-erased random walks inside the core interior join four axis cells
// into a hole-free tree; straight spokes then lead just beyond the core.
std::optional<std::vector<Cell>> seed_core(const Polyomino& stain, int core_radius, std::mt19937_64& rng) {
  const int r = core_radius - 1;
  std::array<Cell, 4> ends{Cell{r, 0}, Cell{0, r}, Cell{-r, 0}, Cell{0, -r}};
  std::shuffle(ends.begin(), ends.end(), rng);
  Candidate t;
  t.radius = r;
  t.core_radius = r;
  t.cells = {ends[0]};
  for (std::size_t e = 1; e < ends.size(); ++e) {
    if (t.contains(ends[e])) continue;
    bool joined = false;
    for (int attempt = 0; attempt < 50 && !joined; ++attempt) {
      std::vector<Cell> path{ends[e]};
      while (!t.contains(path.back())) {
        const Cell c = path.back() + kSteps[std::uniform_int_distribution<int>(0, 3)(rng)];
        if (chebyshev(c) > r) continue;
        const auto loop = std::find(path.begin(), path.end(), c);
        if (loop != path.end()) {
          path.erase(loop + 1, path.end());
        } else {
          path.push_back(c);
        }
      }
      Candidate next = t;
      next.cells.insert(next.cells.end(), path.begin(), path.end() - 1);
      std::sort(next.cells.begin(), next.cells.end());
      if (!check_candidate(next, stain)) {
        t = std::move(next);
        joined = true;
      }
    }
    if (!joined) return std::nullopt;
  }
  std::vector<Cell> cells = t.cells;
  for (int k = r + 1; k <= core_radius + 1; ++k) {
    for (const Cell x : {Cell{k, 0}, Cell{0, k}, Cell{-k, 0}, Cell{0, -k}}) cells.push_back(x);
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

Candidate grow(Candidate c, const Polyomino& stain, int target, std::mt19937_64& rng) {
  const int attempts = 200 * target;
  for (int i = 0; i < attempts && static_cast<int>(c.cells.size()) < target; ++i) {
    std::vector<Cell> pool;
    for (const Cell x : c.cells) {
      for (const Cell d : kSteps) {
        if (!c.contains(x + d)) pool.push_back(x + d);
      }
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const Cell pickd = pick(pool, rng);
    Move m{MoveKind::AddRemove, {pickd}, {true}};
    MoveResult r = apply_move(c, m, stain);
    if (r.candidate) c = std::move(*r.candidate);
  }
  return c;
}

// A seeded core can wall in its own spokes, so seeding is retried until the
// growth reaches init_cells; the largest attempt is kept otherwise.
Candidate initial_candidate(const Polyomino& stain, const SearchParams& p, std::mt19937_64& rng) {
  Candidate c;
  c.radius = p.grid_radius;
  c.core_radius = p.core_radius;
  c.cells = {Cell{0, 0}};
  if (p.core_radius < 2 || p.core_radius >= p.grid_radius) return grow(c, stain, p.init_cells, rng);
  std::optional<Candidate> best;
  for (int attempt = 0; attempt < 500; ++attempt) {
    auto cells = seed_core(stain, p.core_radius, rng);
    if (!cells) continue;
    Candidate seeded = c;
    seeded.cells = std::move(*cells);
    if (check_candidate(seeded, stain)) continue;
    Candidate grown = grow(std::move(seeded), stain, p.init_cells, rng);
    if (!best || grown.cells.size() > best->cells.size()) best = std::move(grown);
    if (static_cast<int>(best->cells.size()) >= p.init_cells) break;
  }
  return best ? *best : grow(c, stain, p.init_cells, rng);
}

struct Runner {
  const Polyomino& stain;
  const SearchParams& p;
  const Observer& obs;

  void log(const std::string& line) {
    if (obs.log) obs.log(line);
  }

  double energy(const PenaltyBreakdown& b, const Candidate& c, const ChainState& st) const {
    double e = b.total;
    if (b.total_fixed == 0 && st.coverable.contains(c.hash())) e += p.coverable_penalty;
    return e;
  }

  // Unpruned solver verdict for a zero-penalty shape.
  Outcome verify(const Candidate& c, ChainState& st) {
    ++st.verifications;
    const Polyomino shape = c.shape();
    if (p.interference_depth > 0) {
      SolverOptions opt;
      opt.interference_depth = p.interference_depth;
      const Decision screen = flat_cover_decide(shape, stain, p.verify_budget, opt);
      if (screen.outcome == Outcome::Coverable) {
        if (obs.verified) obs.verified(shape, Outcome::Coverable);
        return Outcome::Coverable;
      }
    }
    const Decision d = flat_cover_decide(shape, stain, p.verify_budget);
    if (obs.verified) obs.verified(shape, d.outcome);
    return d.outcome;
  }

  std::vector<Cell> changed_cells(const Candidate& from, const Candidate& to, std::vector<bool>& states) const {
    std::vector<Cell> out;
    std::set_symmetric_difference(from.cells.begin(), from.cells.end(), to.cells.begin(), to.cells.end(),
                                  std::back_inserter(out));
    states.clear();
    for (const Cell c : out) states.push_back(to.contains(c));
    return out;
  }

  double calibrate(ChainState& st, PenaltyTracker& tracker, double e0) {
    double sum = 0;
    int n = 0;
    for (int i = 0; i < 200; ++i) {
      const Move m = propose_move(st.current, st.rng, p.move_weights);
      MoveResult r = apply_move(st.current, m, stain);
      if (!r.candidate) continue;
      std::vector<bool> on, off;
      const auto cells = changed_cells(st.current, *r.candidate, on);
      tracker.set_cells(cells, on);
      const double e = energy(tracker.breakdown(), *r.candidate, st);
      for (const bool b : on) off.push_back(!b);
      tracker.set_cells(cells, off);
      if (e > e0) {
        sum += e - e0;
        ++n;
      }
    }
    return n ? (sum / n) / std::log(2.0) : 1.0;
  }

  SearchOutcome run(ChainState st, bool fresh) {
    SearchOutcome out;
    out.chain = st.chain;
    PenaltyTracker tracker(st.current, stain, p.weights);
    PenaltyBreakdown pen = tracker.breakdown();
    double e = energy(pen, st.current, st);
    if (fresh) {
      st.best = st.current;
      st.best_energy = e;
      st.temperature = p.initial_temperature > 0 ? p.initial_temperature : calibrate(st, tracker, e);
      log("chain " + std::to_string(st.chain) + " start cells=" + std::to_string(st.current.cells.size()) +
          " energy=" + format_double("%.3f", e) + " T0=" + format_double("%.6g", st.temperature));
    }
    auto found = [&](const Candidate& c) {
      out.found = true;
      out.counterexample = c.shape();
      log("chain " + std::to_string(st.chain) + " step " + std::to_string(st.step) +
          " verified counterexample cells=" + std::to_string(c.cells.size()) + " box=" +
          std::to_string(out.counterexample->width()) + "x" + std::to_string(out.counterexample->height()));
      if (!p.results_dir.empty()) {
        std::filesystem::create_directories(p.results_dir);
        const auto file = p.results_dir / (p.stain_name + "-seed" + std::to_string(p.seed) + "-chain" +
                                           std::to_string(st.chain) + ".sticker");
        std::ofstream(file) << render(*out.counterexample);
        out.written.push_back(file);
      }
    };
    // A fresh start may already sit at zero penalty.
    if (fresh && pen.total_fixed == 0 && !st.coverable.contains(st.current.hash())) {
      const Outcome v = verify(st.current, st);
      if (v == Outcome::NotCoverable) found(st.current);
      if (v != Outcome::NotCoverable) {
        st.coverable.insert(st.current.hash());
        e = energy(pen, st.current, st);
      }
    }
    while (!out.found && st.step < p.steps) {
      ++st.step;
      const Move m = propose_move(st.current, st.rng, p.move_weights);
      MoveResult r = apply_move(st.current, m, stain);
      if (r.candidate && r.candidate->cells.size() < st.current.cells.size() &&
          static_cast<int>(r.candidate->cells.size()) < p.min_cells) {
        r.candidate.reset();
      }
      if (r.candidate) {
        std::vector<bool> on;
        const auto cells = changed_cells(st.current, *r.candidate, on);
        tracker.set_cells(cells, on);
        const PenaltyBreakdown next_pen = tracker.breakdown();
        const double ne = energy(next_pen, *r.candidate, st);
        const double delta = ne - e;
        const bool accept =
            delta <= 0 || std::uniform_real_distribution<double>(0, 1)(st.rng) < std::exp(-delta / st.temperature);
        if (accept) {
          st.current = std::move(*r.candidate);
          pen = next_pen;
          e = ne;
          if (obs.accepted) obs.accepted(st.current, pen);
          if (pen.total_fixed == 0 && !st.coverable.contains(st.current.hash())) {
            const Outcome v = verify(st.current, st);
            if (v == Outcome::NotCoverable) {
              found(st.current);
            } else {
              st.coverable.insert(st.current.hash());
              e = energy(pen, st.current, st);
            }
          }
          if (e < st.best_energy || out.found) {
            st.best = st.current;
            st.best_energy = e;
          }
        } else {
          std::vector<bool> off;
          for (const bool b : on) off.push_back(!b);
          tracker.set_cells(cells, off);
        }
      }
      st.temperature *= p.cooling_rate;
      if (p.log_interval && st.step % p.log_interval == 0) {
        log("chain " + std::to_string(st.chain) + " step " + std::to_string(st.step) +
            " T=" + format_double("%.6g", st.temperature) + " energy=" + format_double("%.3f", e) +
            " cells=" + std::to_string(st.current.cells.size()) + " best=" + format_double("%.3f", st.best_energy));
      }
      if (!p.checkpoint.empty() && p.checkpoint_interval && st.step % p.checkpoint_interval == 0) {
        save_checkpoint(p.checkpoint, st);
      }
    }
    out.best = st.best;
    out.best_energy = st.best_energy;
    out.best_penalty = penalty(st.best, stain, p.weights);
    out.steps = st.step;
    out.verifications = st.verifications;
    return out;
  }
};

void require_troublesome(const Polyomino& stain) {
  if (classify(stain).always_coverable) {
    throw std::invalid_argument("stain is always-coverable: no counterexample sticker exists");
  }
}

}  // namespace

SearchOutcome anneal(const Polyomino& stain, const SearchParams& params, const Observer& observer) {
  validate(params);
  require_troublesome(stain);
  std::vector<SearchOutcome> results(static_cast<std::size_t>(params.restarts));
  std::vector<std::vector<std::string>> logs(results.size());
  auto run_chain = [&](int chain, bool buffered) {
    Observer o = observer;
    if (buffered && observer.log) o.log = [&, chain](const std::string& l) { logs[static_cast<std::size_t>(chain)].push_back(l); };
    Runner runner{stain, params, o};
    ChainState st;
    st.chain = chain;
    st.rng.seed(params.seed + static_cast<std::uint64_t>(chain));
    st.current = initial_candidate(stain, params, st.rng);
    results[static_cast<std::size_t>(chain)] = runner.run(std::move(st), true);
  };
  if (params.jobs <= 1 || params.restarts == 1) {
    for (int c = 0; c < params.restarts; ++c) {
      run_chain(c, false);
      if (results[static_cast<std::size_t>(c)].found) {
        return results[static_cast<std::size_t>(c)];
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < params.jobs; ++j) {
      pool.emplace_back([&] {
        for (int c = next++; c < params.restarts; c = next++) run_chain(c, true);
      });
    }
    for (auto& t : pool) t.join();
    if (observer.log) {
      for (const auto& chain_log : logs) {
        for (const auto& l : chain_log) observer.log(l);
      }
    }
    for (const auto& r : results) {
      if (r.found) return r;
    }
  }
  const auto best = std::min_element(results.begin(), results.end(), [](const SearchOutcome& a, const SearchOutcome& b) {
    return a.best_energy < b.best_energy;
  });
  return *best;
}

SearchOutcome resume(const Polyomino& stain, const SearchParams& params, const std::filesystem::path& checkpoint,
                     const Observer& observer) {
  validate(params);
  require_troublesome(stain);
  ChainState st = load_checkpoint(checkpoint);
  Runner runner{stain, params, observer};
  return runner.run(std::move(st), false);
}

}  // namespace flatcover::anneal
