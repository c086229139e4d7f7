#pragma once

#include <chrono>

#include "kripke/continuum.hpp"

namespace kripke::detail {

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline nlohmann::json points_json(const Frame& f, PointSet s) {
  nlohmann::json out = nlohmann::json::array();
  for (Point p : members(s)) out.push_back(f.label(p));
  return out;
}

// Validity summary: {"valid": bool} plus the refutation when there is one.
inline nlohmann::json validity_json(const Frame& f, const ValidityResult& r) {
  nlohmann::json j{{"valid", r.valid}, {"valuations", r.space}};
  if (r.refutation) {
    j["point"] = f.label(r.refutation->point);
    j["valuation"] = valuation_json(f, r.refutation->valuation);
  }
  return j;
}

nlohmann::json substitution_json(const Substitution& s);
Substitution substitution_from_json(const nlohmann::json& j);

inline const char* const kTruncationCaveat =
    "finite truncation: the original claim concerns an infinite frame; only the stated bounds are checked";

}  // namespace kripke::detail
