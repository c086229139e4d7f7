#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#include "kripke/error.hpp"
#include "kripke/morphisms.hpp"

namespace kripke {

bool is_pmorphism(const Frame& source, const Frame& target, std::span<const Point> map, bool onto) {
  if (map.size() != source.size()) return false;
  PointSet hit = 0;
  for (Point w = 0; w < source.size(); ++w) {
    if (map[w] >= target.size()) return false;
    hit |= bit(map[w]);
    PointSet image_of_up = 0;
    for (Point v : members(source.up(w))) {
      if (!target.leq(map[w], map[v])) return false;  // monotone
      image_of_up |= bit(map[v]);
    }
    if (!subset(target.up(map[w]), image_of_up)) return false;  // back
  }
  return !onto || hit == target.all();
}

std::optional<PointMap> find_pmorphism_onto(const Frame& source, const Frame& target) {
  const std::size_t n = source.size();
  if (n < target.size() || height(source) < height(target) ||
      popcount(source.maximal()) < popcount(target.maximal()))
    return std::nullopt;

  // Assign points top-down so every strict successor is mapped first. Then
  // with S = f[strict up(x)], the conditions at x reduce to
  //   S subset up(y) subset S + {y}.
  std::vector<Point> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Point a, Point b) { return popcount(source.up(a)) < popcount(source.up(b)); });

  PointMap image(n, 0);
  std::vector<int> uses(target.size(), 0);
  std::size_t covered = 0;
  auto go = [&](auto& self, std::size_t i) -> bool {
    if (covered + (n - i) < target.size()) return false;
    if (i == n) return covered == target.size();
    const Point x = order[i];
    PointSet s = 0;
    for (Point v : members(source.strict_up(x))) s |= bit(image[v]);
    for (Point y = 0; y < target.size(); ++y) {
      const PointSet up = target.up(y);
      if (!subset(s, up) || !subset(up, s | bit(y))) continue;
      image[x] = y;
      if (uses[y]++ == 0) ++covered;
      if (self(self, i + 1)) return true;
      if (--uses[y] == 0) --covered;
    }
    return false;
  };
  if (!go(go, 0)) return std::nullopt;
  return image;
}

std::optional<Reduction> reducible(const Frame& g, const Frame& f, const ReduceOptions& opts) {
  if (!root(f)) throw Error("reducible: target frame must be rooted");
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<std::optional<PointMap>> found(g.size());
  auto attempt = [&](Point w) {
    const Generated sub = generated_subframe(g, w);
    found[w] = find_pmorphism_onto(sub.frame, f);
  };
  if (opts.parallel) {
    // Workers fill per-start slots; the least start with a witness wins.
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t w = 0; w < n; ++w) {
      if (w > best.load(std::memory_order_relaxed)) continue;
      attempt(static_cast<Point>(w));
      if (found[w]) {
        std::int64_t cur = best.load();
        while (w < cur && !best.compare_exchange_weak(cur, w)) {
        }
      }
    }
  } else {
    for (std::int64_t w = 0; w < n; ++w) {
      attempt(static_cast<Point>(w));
      if (found[w]) break;
    }
  }
  for (Point w = 0; w < g.size(); ++w) {
    if (!found[w]) continue;
    const Generated sub = generated_subframe(g, w);
    return Reduction{w, sub.origin, std::move(*found[w])};
  }
  return std::nullopt;
}

bool jankov_valid(const Frame& g, const Frame& f) { return !reducible(g, f).has_value(); }

}  // namespace kripke
