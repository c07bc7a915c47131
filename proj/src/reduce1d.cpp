#include "flatcover/reduce1d.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace flatcover::reduce1d {
namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string run(char bit, std::int64_t count) { return std::string(static_cast<std::size_t>(count), bit); }

std::int64_t stopper_length(const X3CInstance& inst) { return 5 * (inst.r() + 1); }

}  // namespace

void validate(const X3CInstance& inst) {
  if (inst.q < 1) throw std::invalid_argument("q must be positive");
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    const auto& s = inst.sets[i];
    for (int e : s) {
      if (e < 0 || e >= 3 * inst.q) {
        throw std::invalid_argument("set " + std::to_string(i + 1) + ": element out of range");
      }
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) {
      throw std::invalid_argument("set " + std::to_string(i + 1) + ": elements must be distinct");
    }
  }
}

std::vector<std::int64_t> golomb_ruler(int r) {
  if (r < 0) throw std::invalid_argument("golomb_ruler: r must be non-negative");
  std::int64_t p = r + 1;
  while (!is_prime(p)) ++p;
  std::vector<std::int64_t> marks;
  for (std::int64_t i = 0; i <= r; ++i) marks.push_back(2 * p * i + (i * i) % p);
  return marks;
}

std::string code_string(const X3CInstance& inst, std::size_t set_index, std::int64_t n) {
  std::string code(static_cast<std::size_t>(3 * inst.q * n), '0');
  for (int e : inst.sets.at(set_index)) {
    std::fill_n(code.begin() + e * n, n, '1');
  }
  return code;
}

std::vector<Gadget> build_gadgets(const X3CInstance& inst) {
  validate(inst);
  const std::int64_t r = inst.r(), q = inst.q;
  const std::int64_t n = 10 * (3 * q + r + 1);
  const std::int64_t n2 = n * n;
  std::vector<Gadget> gadgets;
  gadgets.push_back(Gadget{run('0', 5 * r) + "11110", run('1', n2) + run('0', 3 * q * n) + run('1', n2),
                           "01111" + run('0', 5 * r)});
  for (std::int64_t i = 1; i <= r; ++i) {
    gadgets.push_back(Gadget{run('0', 5 * (r - i)) + "11011" + run('0', 5 * i),
                             run('0', n2) + code_string(inst, static_cast<std::size_t>(i - 1), n) + run('0', n2),
                             run('0', 5 * i) + "11011" + run('0', 5 * (r - i))});
  }
  return gadgets;
}

OneDTemplate build_template(const X3CInstance& inst) {
  const auto gadgets = build_gadgets(inst);
  OneDTemplate t;
  const std::int64_t r = inst.r(), q = inst.q;
  t.element_size = 10 * (3 * q + r + 1);
  t.target_length = 2 * t.element_size * t.element_size + 3 * q * t.element_size;
  t.gadget_size = t.target_length + 10 * (r + 1);
  t.ruler = golomb_ruler(inst.r());
  for (std::size_t i = 0; i < gadgets.size(); ++i) {
    const std::string bits = gadgets[i].bits();
    const std::int64_t base = 2 * t.ruler[i] * t.gadget_size;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1') t.positions.push_back(base + static_cast<std::int64_t>(j));
    }
  }
  std::sort(t.positions.begin(), t.positions.end());
  return t;
}

bool copies_collide(std::span<const std::int64_t> positions, std::int64_t shift) {
  if (shift == 0) return !positions.empty();
  // Two-pointer scan over sorted positions for a == b + shift.
  std::size_t i = 0, j = 0;
  while (i < positions.size() && j < positions.size()) {
    const std::int64_t b = positions[j] + shift;
    if (positions[i] == b) return true;
    if (positions[i] < b) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

OneDDecision solve_1d(std::span<const std::int64_t> positions_in, std::int64_t length, const SearchBudget& budget) {
  if (positions_in.empty()) throw std::invalid_argument("solve_1d: template must be non-empty");
  if (length <= 0) return OneDDecision{Outcome::Coverable, OneDWitness{}, 0};
  std::vector<std::int64_t> pos(positions_in.begin(), positions_in.end());
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  const std::int64_t lo = pos.front();
  const std::int64_t span = pos.back() - lo;

  // diff[d + span] set iff d is a difference of two template positions.
  std::vector<std::uint64_t> diff(static_cast<std::size_t>((2 * span + 1 + 63) / 64), 0);
  {
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((span + 64) / 64), 0);
    for (const std::int64_t p : pos) bits[static_cast<std::size_t>((p - lo) / 64)] |= std::uint64_t{1} << ((p - lo) % 64);
    // diff |= bits << (span - (p - lo)) for every p: difference a - p lands at a - p + span.
    for (const std::int64_t p : pos) {
      const std::int64_t shift = span - (p - lo);
      const std::int64_t ws = shift / 64, bs = shift % 64;
      for (std::size_t k = 0; k < bits.size(); ++k) {
        const std::uint64_t v = bits[k];
        if (!v) continue;
        const std::size_t at = k + static_cast<std::size_t>(ws);
        if (at < diff.size()) diff[at] |= v << bs;
        if (bs && at + 1 < diff.size()) diff[at + 1] |= v >> (64 - bs);
      }
    }
  }
  auto collide = [&](std::int64_t d) {
    if (d < -span || d > span) return false;
    const std::int64_t k = d + span;
    return ((diff[static_cast<std::size_t>(k / 64)] >> (k % 64)) & 1u) != 0;
  };

  std::vector<std::uint64_t> covered(static_cast<std::size_t>((length + 63) / 64), 0);
  std::vector<std::int64_t> shifts;
  OneDDecision result;
  const auto start = std::chrono::steady_clock::now();
  bool exhausted = false;

  auto toggle = [&](std::int64_t shift) {
    auto first = std::lower_bound(pos.begin(), pos.end(), -shift);
    auto last = std::lower_bound(pos.begin(), pos.end(), length - shift);
    for (auto it = first; it != last; ++it) {
      const std::int64_t x = *it + shift;
      covered[static_cast<std::size_t>(x / 64)] ^= std::uint64_t{1} << (x % 64);
    }
  };
  auto next_target = [&](std::int64_t from) -> std::int64_t {
    for (std::int64_t w = from / 64; w < static_cast<std::int64_t>(covered.size()); ++w) {
      std::uint64_t free = ~covered[static_cast<std::size_t>(w)];
      if (w == from / 64) free &= ~std::uint64_t{0} << (from % 64);
      if (free) {
        const std::int64_t x = w * 64 + std::countr_zero(free);
        return x < length ? x : length;
      }
    }
    return length;
  };

  std::function<bool(std::int64_t)> dfs = [&](std::int64_t from) -> bool {
    const std::int64_t target = next_target(from);
    if (target >= length) return true;
    for (const std::int64_t p : pos) {
      const std::int64_t shift = target - p;
      bool ok = true;
      for (const std::int64_t s : shifts) {
        if (collide(shift - s)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      ++result.nodes;
      if ((budget.max_nodes && result.nodes > *budget.max_nodes) ||
          (budget.max_time && (result.nodes & 255) == 0 &&
           std::chrono::steady_clock::now() - start > *budget.max_time)) {
        exhausted = true;
        return false;
      }
      shifts.push_back(shift);
      toggle(shift);
      if (dfs(target + 1)) return true;
      toggle(shift);
      shifts.pop_back();
      if (exhausted) return false;
    }
    return false;
  };

  if (dfs(0)) {
    result.outcome = Outcome::Coverable;
    result.witness = OneDWitness{shifts};
  } else {
    result.outcome = exhausted ? Outcome::Unknown : Outcome::NotCoverable;
  }
  return result;
}

bool verify_1d(std::span<const std::int64_t> positions, std::int64_t length, const OneDWitness& witness) {
  std::vector<std::int64_t> all;
  all.reserve(positions.size() * witness.shifts.size());
  for (const std::int64_t s : witness.shifts) {
    for (const std::int64_t p : positions) all.push_back(p + s);
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  auto it = std::lower_bound(all.begin(), all.end(), std::int64_t{0});
  for (std::int64_t x = 0; x < length; ++x, ++it) {
    if (it == all.end() || *it != x) return false;
  }
  return true;
}

OneDWitness witness_from_x3c(const X3CInstance& inst, const OneDTemplate& tmpl, std::span<const int> chosen) {
  validate(inst);
  if (static_cast<int>(chosen.size()) != inst.q) throw std::invalid_argument("an exact cover uses exactly q sets");
  std::vector<int> hits(static_cast<std::size_t>(3 * inst.q), 0);
  for (const int k : chosen) {
    if (k < 1 || k > inst.r()) throw std::invalid_argument("set index out of range");
    for (const int e : inst.sets[static_cast<std::size_t>(k - 1)]) ++hits[static_cast<std::size_t>(e)];
  }
  if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
    throw std::invalid_argument("chosen sets do not partition the universe");
  }
  const std::int64_t stop = stopper_length(inst);
  OneDWitness w;
  w.shifts.push_back(-stop);
  for (const int k : chosen) w.shifts.push_back(-2 * tmpl.ruler[static_cast<std::size_t>(k)] * tmpl.gadget_size - stop);
  return w;
}

std::optional<std::vector<int>> brute_x3c(const X3CInstance& inst) {
  validate(inst);
  if (inst.r() > 25) throw std::invalid_argument("brute_x3c: at most 25 sets");
  std::vector<int> chosen;
  std::vector<int> hits(static_cast<std::size_t>(3 * inst.q), 0);
  std::function<bool(int)> go = [&](int from) {
    if (static_cast<int>(chosen.size()) == inst.q) return true;
    for (int k = from; k <= inst.r(); ++k) {
      const auto& s = inst.sets[static_cast<std::size_t>(k - 1)];
      if (std::any_of(s.begin(), s.end(), [&](int e) { return hits[static_cast<std::size_t>(e)] != 0; })) continue;
      for (int e : s) ++hits[static_cast<std::size_t>(e)];
      chosen.push_back(k);
      if (go(k + 1)) return true;
      chosen.pop_back();
      for (int e : s) --hits[static_cast<std::size_t>(e)];
    }
    return false;
  };
  if (!go(1)) return std::nullopt;
  return chosen;
}

std::vector<std::int64_t> positions_from_bits(std::string_view bits) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

std::string bits_from_positions(std::span<const std::int64_t> positions) {
  if (positions.empty()) return {};
  const std::int64_t hi = *std::max_element(positions.begin(), positions.end());
  std::string bits(static_cast<std::size_t>(hi + 1), '0');
  for (const std::int64_t p : positions) {
    if (p < 0) throw std::invalid_argument("bits_from_positions: negative position");
    bits[static_cast<std::size_t>(p)] = '1';
  }
  return bits;
}

X3CInstance parse_x3c(std::string_view text) {
  std::istringstream in{std::string(text)};
  X3CInstance inst;
  int r = 0;
  if (!(in >> inst.q >> r) || inst.q < 1 || r < 0) throw std::invalid_argument("x3c: expected header 'q r'");
  for (int i = 0; i < r; ++i) {
    std::array<int, 3> s{};
    if (!(in >> s[0] >> s[1] >> s[2])) {
      throw std::invalid_argument("x3c: set " + std::to_string(i + 1) + " needs three elements");
    }
    inst.sets.push_back(s);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("x3c: trailing input");
  validate(inst);
  return inst;
}

std::string format_x3c(const X3CInstance& inst) {
  std::ostringstream os;
  os << inst.q << ' ' << inst.r() << '\n';
  for (const auto& s : inst.sets) os << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  return os.str();
}

std::string template_to_rle(const OneDTemplate& t) {
  std::ostringstream os;
  os << "flatcover-template 1\n";
  os << "N " << t.element_size << "\nL " << t.target_length << "\nW " << t.gadget_size << "\nruler";
  for (const auto a : t.ruler) os << ' ' << a;
  const std::string bits = bits_from_positions(t.positions);
  os << "\nlength " << bits.size() << "\nruns";
  std::size_t i = 0, col = 0;
  while (i < bits.size()) {
    std::size_t j = i;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    os << (col++ % 16 == 0 ? "\n" : " ") << bits[i] << '*' << (j - i);
    i = j;
  }
  os << '\n';
  return os.str();
}

OneDTemplate template_from_rle(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "flatcover-template" || version != 1) {
    throw std::invalid_argument("template: bad magic line");
  }
  OneDTemplate t;
  std::int64_t length = -1;
  auto expect = [&](const char* key) {
    if (!(in >> word) || word != key) throw std::invalid_argument(std::string("template: expected ") + key);
  };
  expect("N");
  in >> t.element_size;
  expect("L");
  in >> t.target_length;
  expect("W");
  in >> t.gadget_size;
  expect("ruler");
  std::string line;
  std::getline(in, line);
  {
    std::istringstream ls(line);
    std::int64_t a = 0;
    while (ls >> a) t.ruler.push_back(a);
  }
  expect("length");
  in >> length;
  expect("runs");
  std::int64_t at = 0;
  while (in >> word) {
    const auto star = word.find('*');
    if (star != 1 || (word[0] != '0' && word[0] != '1')) throw std::invalid_argument("template: bad run " + word);
    const std::int64_t count = std::stoll(word.substr(2));
    if (word[0] == '1') {
      for (std::int64_t k = 0; k < count; ++k) t.positions.push_back(at + k);
    }
    at += count;
  }
  if (!in.eof() || at != length) throw std::invalid_argument("template: run lengths do not sum to length");
  return t;
}

std::string template_to_positions(const OneDTemplate& t) {
  std::ostringstream os;
  os << "# L " << t.target_length << '\n';
  for (const auto p : t.positions) os << p << '\n';
  return os.str();
}

std::vector<std::int64_t> positions_from_list(std::string_view text, std::int64_t* length) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::int64_t> out;
  while (std::getline(in, line)) {
    if (line.rfind("# L ", 0) == 0) {
      if (length) *length = std::stoll(line.substr(4));
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::int64_t p = 0;
    while (ls >> p) out.push_back(p);
  }
  return out;
}

}  // namespace flatcover::reduce1d
