// Enumeration of finite posets up to isomorphism.
//
// Every poset on m+1 points arises from one on m points by adding a new
// maximal point above a down-closed set. Isomorphism classes are identified
// by a canonical code: the largest bit string over pairs i<j (bit set iff
// i <= j) among all natural labellings of the poset.

#include <algorithm>
#include <set>

#include "kripke/error.hpp"
#include "kripke/frame.hpp"

namespace kripke {
namespace {

using Code = std::uint64_t;

Code encode(const std::vector<PointSet>& up, const std::vector<Point>& perm) {
  // perm[new] = old
  Code code = 0;
  const std::size_t n = perm.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) code = (code << 1) | (contains(up[perm[i]], perm[j]) ? 1U : 0U);
  return code;
}

std::vector<PointSet> decode(Code code, std::size_t n) {
  std::vector<PointSet> up(n);
  for (Point i = 0; i < n; ++i) up[i] = bit(i);
  std::size_t shift = n * (n - 1) / 2;
  for (Point i = 0; i < n; ++i)
    for (Point j = i + 1; j < n; ++j)
      if ((code >> --shift) & 1U) up[i] |= bit(j);
  return up;
}

Code canonical_code(const std::vector<PointSet>& up) {
  const std::size_t n = up.size();
  std::vector<PointSet> down(n, 0);
  for (Point a = 0; a < n; ++a)
    for (Point b : members(up[a])) down[b] |= bit(a);
  std::vector<Point> perm;
  perm.reserve(n);
  Code best = 0;
  bool any = false;
  auto go = [&](auto& self, PointSet placed) -> void {
    if (perm.size() == n) {
      const Code c = encode(up, perm);
      if (!any || c > best) best = c;
      any = true;
      return;
    }
    for (Point p = 0; p < n; ++p) {
      if (contains(placed, p) || !subset(down[p] & ~bit(p), placed)) continue;
      perm.push_back(p);
      self(self, placed | bit(p));
      perm.pop_back();
    }
  };
  go(go, 0);
  return best;
}

std::set<Code> codes_of_size(std::size_t n) {
  std::set<Code> level{0};  // the one-point poset has an empty code
  for (std::size_t m = 1; m < n; ++m) {
    std::set<Code> next;
    for (Code c : level) {
      const auto up = decode(c, m);
      const Frame f = Frame::from_up_sets(up);
      for (Upset u : upsets(f)) {
        const PointSet below = f.all() & ~u;
        auto grown = up;
        grown.push_back(bit(static_cast<Point>(m)));
        for (Point p : members(below)) grown[p] |= bit(static_cast<Point>(m));
        next.insert(canonical_code(grown));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

void for_each_poset(std::size_t n, bool rooted, const std::function<void(const Frame&)>& visit,
                    std::size_t cap) {
  if (n == 0) return;
  if (n > cap) throw ResourceError("poset enumeration size exceeds cap", n, cap);
  if (n > 11) throw ResourceError("poset enumeration size exceeds code width", n, 11);
  for (Code c : codes_of_size(n)) {
    Frame f = Frame::from_up_sets(decode(c, n));
    if (rooted && !root(f)) continue;
    visit(f);
  }
}

std::vector<Frame> enumerate_posets(std::size_t n, bool rooted, std::size_t cap) {
  std::vector<Frame> out;
  for_each_poset(n, rooted, [&](const Frame& f) { out.push_back(f); }, cap);
  return out;
}

}  // namespace kripke
