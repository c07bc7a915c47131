#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flatcover/solver.hpp"

namespace flatcover::reduce1d {

// Exact Cover by 3-Sets over U = {0, ..., 3q-1}.
struct X3CInstance {
  int q = 1;
  std::vector<std::array<int, 3>> sets;

  int r() const { return static_cast<int>(sets.size()); }
};

// Throws std::invalid_argument unless every set has 3 distinct in-range elements.
void validate(const X3CInstance& inst);

// a_0 = 0 < a_1 < ... < a_r with pairwise distinct differences:
// 2p*i + (i^2 mod p) for the smallest prime p >= r + 1.
std::vector<std::int64_t> golomb_ruler(int r);

struct Gadget {
  std::string left_stopper;   // length 5(r+1)
  std::string main_body;      // length L
  std::string right_stopper;  // length 5(r+1)

  std::string bits() const { return left_stopper + main_body + right_stopper; }
};

// A single 1D sticker: the set of 1-positions of the template bitstring.
// Positions are indices into that bitstring, so the first 1 sits at 5r.
struct OneDTemplate {
  std::vector<std::int64_t> positions;
  std::int64_t element_size = 0;   // N = 10(3q + r + 1)
  std::int64_t target_length = 0;  // L = 2N^2 + 3qN
  std::int64_t gadget_size = 0;    // W = L + 10(r + 1)
  std::vector<std::int64_t> ruler;
};

// 3qN-bit string with a 1-block of length N at each element of the set.
std::string code_string(const X3CInstance& inst, std::size_t set_index, std::int64_t n);

// Frame gadget at index 0, then one gadget per set.
std::vector<Gadget> build_gadgets(const X3CInstance& inst);
OneDTemplate build_template(const X3CInstance& inst);

struct OneDWitness {
  std::vector<std::int64_t> shifts;
};

struct OneDDecision {
  Outcome outcome = Outcome::Unknown;
  std::optional<OneDWitness> witness;
  std::uint64_t nodes = 0;
};

// Complete DFS on the smallest uncovered position of [0, L).
OneDDecision solve_1d(std::span<const std::int64_t> positions, std::int64_t length,
                      const SearchBudget& budget = SearchBudget::unlimited());

// Shifted copies pairwise disjoint and their union contains [0, L).
bool verify_1d(std::span<const std::int64_t> positions, std::int64_t length, const OneDWitness& witness);

// chosen holds 1-based set indices. Throws std::invalid_argument unless they
// partition U.
OneDWitness witness_from_x3c(const X3CInstance& inst, const OneDTemplate& tmpl, std::span<const int> chosen);

// First exact cover in lexicographic order of 1-based indices, or nullopt.
// Guarded to r <= 25.
std::optional<std::vector<int>> brute_x3c(const X3CInstance& inst);

// Do two copies shifted by `shift` share a position?
bool copies_collide(std::span<const std::int64_t> positions, std::int64_t shift);

std::vector<std::int64_t> positions_from_bits(std::string_view bits);
std::string bits_from_positions(std::span<const std::int64_t> positions);

// ".x3c": "q r" then r lines of three elements.
X3CInstance parse_x3c(std::string_view text);
std::string format_x3c(const X3CInstance& inst);

// Template export: a header with N, L, W and the ruler, then the bitstring as
// "<bit>*<count>" runs. The position list is one integer per line after a
// "# L <length>" header.
std::string template_to_rle(const OneDTemplate& t);
OneDTemplate template_from_rle(std::string_view text);
std::string template_to_positions(const OneDTemplate& t);
std::vector<std::int64_t> positions_from_list(std::string_view text, std::int64_t* length = nullptr);

}  // namespace flatcover::reduce1d
