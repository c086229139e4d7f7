#include "kripke/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "kripke/error.hpp"

namespace kripke {

namespace detail {
extern const char* const kBuiltinCatalog;
}

Catalog Catalog::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw CatalogError("catalog must be a JSON array of frames");
  Catalog cat;
  std::set<std::string> names;
  for (const auto& item : doc) {
    try {
      CatalogEntry e{item.at("name").get<std::string>(), "", std::nullopt, {}, "",
                     Frame::antichain(1), item.value("meta", nlohmann::json::object())};
      if (!names.insert(e.name).second) throw CatalogError("duplicate catalog name: " + e.name);
      const auto n = item.at("points").get<std::size_t>();
      std::vector<std::pair<Point, Point>> covers;
      for (const auto& c : item.at("covers")) covers.emplace_back(c.at(0).get<Point>(), c.at(1).get<Point>());
      auto labels = item.value("labels", std::vector<std::string>{});
      if (!labels.empty() && labels.size() != n)
        throw CatalogError(e.name + ": label count differs from point count");
      e.frame = Frame::from_covers(n, covers, std::move(labels));
      e.family = e.meta.value("family", "");
      if (e.meta.contains("index")) e.index = e.meta.at("index").get<int>();
      e.designated = e.meta.value("designated", std::vector<Point>{});
      e.note = e.meta.value("note", "");
      for (Point d : e.designated)
        if (d >= n || !contains(e.frame.maximal(), d))
          throw CatalogError(e.name + ": designated point " + std::to_string(d) + " is not maximal");
      cat.entries_.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw CatalogError(std::string("malformed catalog entry: ") + ex.what());
    } catch (const FrameError& ex) {
      throw CatalogError(item.value("name", std::string("?")) + ": " + ex.what());
    }
  }
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw CatalogError(path.string() + ": " + ex.what());
  }
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = from_json(nlohmann::json::parse(detail::kBuiltinCatalog));
  return cat;
}

const Catalog& Catalog::shipped() {
  static const Catalog cat = [] {
    if (const char* path = std::getenv("KRIPKE_CATALOG"); path && *path) return load(path);
    return builtin();
  }();
  return cat;
}

nlohmann::json Catalog::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& e : entries_) {
    nlohmann::json covers = nlohmann::json::array();
    for (auto [a, b] : e.frame.covers()) covers.push_back({a, b});
    doc.push_back({{"name", e.name},
                   {"points", e.frame.size()},
                   {"labels", e.frame.labels()},
                   {"covers", covers},
                   {"meta", e.meta}});
  }
  return doc;
}

const CatalogEntry* Catalog::find(const std::string& name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

const CatalogEntry& Catalog::get(const std::string& name) const {
  if (const auto* e = find(name)) return *e;
  throw CatalogError("no catalog entry named " + name);
}

const CatalogEntry& Catalog::member(const std::string& family, int index) const {
  for (const auto& e : entries_)
    if (e.family == family && e.index == index) return e;
  throw CatalogError("no catalog entry for family " + family + " index " + std::to_string(index));
}

std::vector<int> Catalog::indices(const std::string& family) const {
  std::vector<int> out;
  for (const auto& e : entries_)
    if (e.family == family && e.index) out.push_back(*e.index);
  std::sort(out.begin(), out.end());
  return out;
}

Frame family_frame(int n) { return Catalog::shipped().member("F", n).frame; }
Frame fine_truncation(int k) { return Catalog::shipped().member("fine", k).frame; }

}  // namespace kripke
