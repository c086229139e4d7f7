#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kripke {

using Point = std::uint32_t;

// Set of points of a frame with at most 64 points.
using PointSet = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

constexpr PointSet bit(Point p) { return PointSet{1} << p; }
constexpr bool contains(PointSet s, Point p) { return (s >> p) & 1U; }
constexpr bool subset(PointSet a, PointSet b) { return (a & ~b) == 0; }
inline int popcount(PointSet s) { return std::popcount(s); }
std::vector<Point> members(PointSet s);
PointSet from_members(const std::vector<Point>& pts);

// Upward closed set of points.
using Upset = PointSet;

// Finite partial order on points 0..n-1. Immutable once built; the order
// is stored as per-point up- and down-sets.
class Frame {
 public:
  // Reflexive-transitive closure of `covers`. Throws FrameError on a cycle,
  // an out-of-range point, n == 0 or n > kMaxPoints.
  static Frame from_covers(std::size_t n, const std::vector<std::pair<Point, Point>>& covers,
                           std::vector<std::string> labels = {});
  // `up[i]` must already be the full up-set of point i; checked.
  static Frame from_up_sets(std::vector<PointSet> up, std::vector<std::string> labels = {});

  static Frame chain(std::size_t k);
  static Frame antichain(std::size_t k);
  // Root below k pairwise incomparable maximal points.
  static Frame fork(std::size_t k);

  std::size_t size() const noexcept { return up_.size(); }
  PointSet all() const noexcept { return all_; }
  bool leq(Point a, Point b) const noexcept { return contains(up_[a], b); }
  PointSet up(Point p) const noexcept { return up_[p]; }
  PointSet down(Point p) const noexcept { return down_[p]; }
  PointSet strict_up(Point p) const noexcept { return up_[p] & ~bit(p); }
  // Immediate successors.
  PointSet covers_of(Point p) const noexcept { return cover_[p]; }
  std::vector<std::pair<Point, Point>> covers() const;

  PointSet up_closure(PointSet s) const;
  PointSet down_closure(PointSet s) const;
  bool is_upset(PointSet s) const { return up_closure(s) == s; }

  PointSet maximal() const noexcept { return maximal_; }
  PointSet minimal() const noexcept { return minimal_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(Point p) const;

  friend bool operator==(const Frame& a, const Frame& b) { return a.up_ == b.up_; }

 private:
  Frame(std::vector<PointSet> up, std::vector<std::string> labels);

  std::vector<PointSet> up_, down_, cover_;
  std::vector<std::string> labels_;
  PointSet all_ = 0, maximal_ = 0, minimal_ = 0;
};

inline constexpr std::size_t kDefaultUpsetCap = std::size_t{1} << 20;

// All upsets, sorted ascending by bit pattern: the empty set first, W last.
std::vector<Upset> upsets(const Frame& f, std::size_t cap = kDefaultUpsetCap);

struct Generated {
  Frame frame;
  // Local point i is point `origin[i]` of the parent frame; local 0 is the root.
  std::vector<Point> origin;
};

// Subframe on {v : w <= v}. Points keep their relative order with the
// generating point moved to index 0.
Generated generated_subframe(const Frame& f, Point w);

std::optional<Point> root(const Frame& f);
std::size_t height(const Frame& f);
std::size_t width(const Frame& f);
std::size_t branching(const Frame& f);

// Points t1 < ... < tk (trunk) with a tooth u_i above each t_i. Point
// numbering interleaves: t_i = 2(i-1), u_i = 2(i-1)+1.
Frame comb(std::size_t k);
inline Point comb_trunk(std::size_t i) { return static_cast<Point>(2 * (i - 1)); }
inline Point comb_tooth(std::size_t i) { return static_cast<Point>(2 * (i - 1) + 1); }

// Finite truncation of the Fine frame. A two-generator ladder: maximal
// points m1, m2; b_0 < m2 and c_0 < m1; b_{i+1} covers b_i and c_{i-1},
// c_{i+1} covers c_i and b_{i-1}, up to level k+1. Below each rung pair
// (b_{i+1}, c_{i+1}) sits d_i, and an ascending chain x_0 < ... < x_k has
// x_i < d_i. Under p = {m1}, q = {m2} the point d_i is the only one
// refuting alpha_i, so x_i refutes alpha_j for i <= j <= k.
// Numbering: m1, m2, then b_i, c_i pairs, then the d_i, then the x_i.
Frame fine_ladder(std::size_t k);
inline constexpr Point kFineP = 0;
inline constexpr Point kFineQ = 1;

bool isomorphic(const Frame& a, const Frame& b);

// Hasse diagram in DOT syntax. Node ids are point indices.
std::string dot_export(const Frame& f, const std::map<Point, std::string>& annotations = {});
// Reads back the nodes and edges of a digraph written by dot_export.
Frame frame_from_dot(const std::string& dot);

inline constexpr std::size_t kDefaultPosetCap = 6;

// All posets on n points up to isomorphism, each in a canonical natural
// labelling (a <= b implies index(a) <= index(b), so a root is point 0).
// Order is deterministic. Throws ResourceError when n > cap.
std::vector<Frame> enumerate_posets(std::size_t n, bool rooted, std::size_t cap = kDefaultPosetCap);
void for_each_poset(std::size_t n, bool rooted, const std::function<void(const Frame&)>& visit,
                    std::size_t cap = kDefaultPosetCap);

}  // namespace kripke
