#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kripke/frame.hpp"

namespace kripke {

// One named frame of the catalog. `family` is "F" for the independent
// sequence, "fine" for truncations of the Fine frame, anything else for
// auxiliary frames. `designated` holds the maximal points whose singletons
// seed the admissible sets of a Fine truncation.
struct CatalogEntry {
  std::string name;
  std::string family;
  std::optional<int> index;
  std::vector<Point> designated;
  std::string note;
  Frame frame;
  nlohmann::json meta;
};

// Catalog file: a JSON array of
//   {"name", "points", "labels", "covers": [[i, j], ...], "meta": {...}}
// where meta carries "family", "index", "designated" and "note".
class Catalog {
 public:
  static Catalog from_json(const nlohmann::json& doc);
  static Catalog load(const std::filesystem::path& path);
  // The catalog compiled into the library, or the file named by the
  // KRIPKE_CATALOG environment variable when set.
  static const Catalog& shipped();
  static const Catalog& builtin();

  nlohmann::json to_json() const;

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  const CatalogEntry& get(const std::string& name) const;
  const CatalogEntry* find(const std::string& name) const;
  const CatalogEntry& member(const std::string& family, int index) const;
  std::vector<int> indices(const std::string& family) const;

 private:
  std::vector<CatalogEntry> entries_;
};

Frame family_frame(int n);
Frame fine_truncation(int k);

}  // namespace kripke
