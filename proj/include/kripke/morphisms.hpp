#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"

namespace kripke {

// Total map from the points of a source frame to the points of a target.
using PointMap = std::vector<Point>;

// Monotone, satisfies the back condition (f(w) <= y implies y = f(v) for
// some v >= w), and is onto when `onto` is set.
bool is_pmorphism(const Frame& source, const Frame& target, std::span<const Point> map, bool onto);

// Witness that the subframe of G generated by `start` maps p-morphically
// onto F. `domain[i]` is a point of G and `image[i]` its value in F.
struct Reduction {
  Point start;
  std::vector<Point> domain;
  PointMap image;
};

struct ReduceOptions {
  bool parallel = true;
};

// First start point w (ascending) whose generated subframe maps onto F, with
// the first map found by backtracking over candidate images in ascending
// order. F must be rooted.
std::optional<Reduction> reducible(const Frame& g, const Frame& f, const ReduceOptions& opts = {});

// Onto p-morphism from rooted `source` to `target`, if any.
std::optional<PointMap> find_pmorphism_onto(const Frame& source, const Frame& target);

// Jankov formula built from the diagram of F's upset algebra: a variable
// per upset (numbered in upsets() order), the conjunction D of
//   q_{a&b} <-> q_a & q_b,  q_{a|b} <-> q_a | q_b,  q_{a=>b} <-> (q_a -> q_b),
// over all pairs plus q_empty <-> false, and the formula D -> q_omega with
// omega = W minus the root.
struct JankovFormula {
  Formula formula;
  std::vector<Upset> upsets;
  Var omega;
};

JankovFormula jankov_formula(const Frame& f, std::size_t upset_cap = 1024);
inline Formula jankov(const Frame& f, std::size_t upset_cap = 1024) { return jankov_formula(f, upset_cap).formula; }

// G validates the Jankov formula of F iff no generated subframe of G maps
// p-morphically onto F; decided by the reduction search.
bool jankov_valid(const Frame& g, const Frame& f);

}  // namespace kripke
