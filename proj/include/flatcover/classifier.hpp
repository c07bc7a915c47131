#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/poly.hpp"
#include "flatcover/solver.hpp"

namespace flatcover {

struct CatalogEntry {
  std::string name;  // e.g. "5/I", "6/W", "7/1110_0011_0001_0001"
  Polyomino stain;
  // I-entries only. Absent when no verified sticker ships for the entry.
  std::optional<Polyomino> counterexample;
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(const std::string& entry, const std::string& what)
      : std::runtime_error(entry + ": " + what), entry_(entry) {}
  const std::string& entry() const { return entry_; }

 private:
  std::string entry_;
};

struct Catalog {
  std::vector<CatalogEntry> I;
  std::vector<CatalogEntry> J;
};

// File "<dir>/I/5-I.stain" holds entry "5/I": the first '-' of the stem
// stands for '/'. Entries are ordered by stain size, then name.
Catalog load_catalog(const std::filesystem::path& dir);

// $FLATCOVER_CATALOG if set, else the directory configured at build time.
std::filesystem::path default_catalog_dir();
const Catalog& default_catalog();
const std::vector<CatalogEntry>& catalog_I();
const std::vector<CatalogEntry>& catalog_J();

std::string entry_file_stem(const std::string& name);
std::string entry_name_from_stem(const std::string& stem);

struct Classification {
  bool always_coverable = false;
  std::string entry;  // containing J-entry or included I-entry
  // NotAlwaysCoverable only: the entry's sticker, oriented like the copy of
  // the entry found inside Q. Absent if the catalog ships no sticker.
  std::optional<Polyomino> counterexample;
  std::optional<Inclusion> inclusion;  // where the I-entry sits inside Q
};

// Throws CatalogError if neither branch applies (incomplete catalog).
Classification classify(const Polyomino& q, const Catalog& catalog = default_catalog());

enum class EntryStatus { Verified, Coverable, Unknown, Missing, NotSimplyConnected };
std::string to_string(EntryStatus s);

struct EntryVerification {
  std::string name;
  EntryStatus status = EntryStatus::Missing;
  bool large = false;          // sticker above the large-sticker threshold
  bool unknown_permitted = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::int32_t sticker_width = 0;
  std::int32_t sticker_height = 0;
};

struct CatalogVerification {
  std::vector<EntryVerification> entries;
  bool passed() const;
};

struct VerifyOptions {
  SearchBudget budget = SearchBudget::time(std::chrono::minutes(10));
  // Stickers whose bounding box exceeds this side get large_budget and may
  // end Unknown, unless exhaustive is set.
  std::int32_t large_side = 200;
  SearchBudget large_budget = SearchBudget::time(std::chrono::seconds(30));
  bool exhaustive = false;
  int jobs = 1;
  std::vector<std::string> only;  // restrict to these entry names when non-empty
};

CatalogVerification verify_catalog(const Catalog& catalog, const VerifyOptions& options);

struct PartitionReport {
  std::array<std::size_t, 8> counts{};       // free polyominoes per size, index 1..7
  std::array<std::size_t, 8> include_I{};    // per size
  std::array<std::size_t, 8> inside_J{};     // per size
  std::vector<std::string> violations;       // rendered shapes with a reason
  bool passed() const { return violations.empty(); }
};

PartitionReport exhaustive_partition_check(const Catalog& catalog = default_catalog());

}  // namespace flatcover
