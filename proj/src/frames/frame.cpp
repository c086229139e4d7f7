#include "kripke/frame.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

#include "kripke/error.hpp"

namespace kripke {

std::vector<Point> members(PointSet s) {
  std::vector<Point> out;
  while (s) {
    out.push_back(static_cast<Point>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

PointSet from_members(const std::vector<Point>& pts) {
  PointSet s = 0;
  for (Point p : pts) s |= bit(p);
  return s;
}

Frame::Frame(std::vector<PointSet> up, std::vector<std::string> labels)
    : up_(std::move(up)), labels_(std::move(labels)) {
  const std::size_t n = up_.size();
  all_ = n == 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
  down_.assign(n, 0);
  cover_.assign(n, 0);
  for (Point a = 0; a < n; ++a)
    for (Point b : members(up_[a])) down_[b] |= bit(a);
  for (Point a = 0; a < n; ++a) {
    PointSet above = strict_up(a);
    PointSet indirect = 0;
    for (Point b : members(above)) indirect |= strict_up(b);
    cover_[a] = above & ~indirect;
    if (above == 0) maximal_ |= bit(a);
    if ((down_[a] & ~bit(a)) == 0) minimal_ |= bit(a);
  }
  if (labels_.size() < n) labels_.resize(n);
}

Frame Frame::from_covers(std::size_t n, const std::vector<std::pair<Point, Point>>& covers,
                         std::vector<std::string> labels) {
  if (n == 0) throw FrameError("a frame needs at least one point");
  if (n > kMaxPoints)
    throw FrameError("frames are limited to " + std::to_string(kMaxPoints) + " points");
  std::vector<PointSet> up(n);
  for (Point i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [a, b] : covers) {
    if (a >= n || b >= n)
      throw FrameError("cover (" + std::to_string(a) + "," + std::to_string(b) +
                       ") references a point outside 0.." + std::to_string(n - 1));
    up[a] |= bit(b);
  }
  // Warshall closure on bit rows.
  for (Point k = 0; k < n; ++k)
    for (Point i = 0; i < n; ++i)
      if (contains(up[i], k)) up[i] |= up[k];
  for (Point i = 0; i < n; ++i)
    for (Point j : members(up[i]))
      if (j != i && contains(up[j], i))
        throw FrameError("cycle through points " + std::to_string(i) + " and " + std::to_string(j) +
                         " violates antisymmetry");
  return Frame(std::move(up), std::move(labels));
}

Frame Frame::from_up_sets(std::vector<PointSet> up, std::vector<std::string> labels) {
  const std::size_t n = up.size();
  if (n == 0) throw FrameError("a frame needs at least one point");
  if (n > kMaxPoints)
    throw FrameError("frames are limited to " + std::to_string(kMaxPoints) + " points");
  const PointSet all = n == 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
  for (Point i = 0; i < n; ++i) {
    if (!contains(up[i], i)) throw FrameError("order is not reflexive at " + std::to_string(i));
    if (!subset(up[i], all)) throw FrameError("up-set of " + std::to_string(i) + " out of range");
    for (Point j : members(up[i])) {
      if (!subset(up[j], up[i])) throw FrameError("order is not transitive at " + std::to_string(i));
      if (j != i && contains(up[j], i)) throw FrameError("order is not antisymmetric");
    }
  }
  return Frame(std::move(up), std::move(labels));
}

Frame Frame::chain(std::size_t k) {
  std::vector<std::pair<Point, Point>> c;
  for (Point i = 0; i + 1 < k; ++i) c.emplace_back(i, i + 1);
  return from_covers(k, c);
}

Frame Frame::antichain(std::size_t k) { return from_covers(k, {}); }

Frame Frame::fork(std::size_t k) {
  std::vector<std::pair<Point, Point>> c;
  for (Point i = 1; i <= k; ++i) c.emplace_back(0, i);
  return from_covers(k + 1, c);
}

std::vector<std::pair<Point, Point>> Frame::covers() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point a = 0; a < size(); ++a)
    for (Point b : members(cover_[a])) out.emplace_back(a, b);
  return out;
}

PointSet Frame::up_closure(PointSet s) const {
  PointSet out = 0;
  for (Point p : members(s)) out |= up_[p];
  return out;
}

PointSet Frame::down_closure(PointSet s) const {
  PointSet out = 0;
  for (Point p : members(s)) out |= down_[p];
  return out;
}

std::string Frame::label(Point p) const {
  return labels_[p].empty() ? std::to_string(p) : labels_[p];
}

std::vector<Upset> upsets(const Frame& f, std::size_t cap) {
  // Points ordered so that every strict successor precedes its predecessors.
  std::vector<Point> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Point a, Point b) {
    return popcount(f.up(a)) < popcount(f.up(b));
  });
  std::vector<Upset> out;
  auto go = [&](auto& self, std::size_t i, Upset cur) -> void {
    if (i == order.size()) {
      if (out.size() >= cap) throw ResourceError("upset enumeration exceeds cap", out.size() + 1, cap);
      out.push_back(cur);
      return;
    }
    const Point p = order[i];
    self(self, i + 1, cur);
    if (subset(f.strict_up(p), cur)) self(self, i + 1, cur | bit(p));
  };
  go(go, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Generated generated_subframe(const Frame& f, Point w) {
  std::vector<Point> origin{w};
  for (Point v : members(f.up(w)))
    if (v != w) origin.push_back(v);
  std::vector<Point> local(f.size(), 0);
  for (Point i = 0; i < origin.size(); ++i) local[origin[i]] = i;
  std::vector<PointSet> up(origin.size(), 0);
  std::vector<std::string> labels;
  for (Point i = 0; i < origin.size(); ++i) {
    for (Point v : members(f.up(origin[i]))) up[i] |= bit(local[v]);
    labels.push_back(f.labels()[origin[i]]);
  }
  return {Frame::from_up_sets(std::move(up), std::move(labels)), std::move(origin)};
}

std::optional<Point> root(const Frame& f) {
  if (popcount(f.minimal()) != 1) return std::nullopt;
  return static_cast<Point>(std::countr_zero(f.minimal()));
}

std::size_t height(const Frame& f) {
  // longest[p] = points on the longest chain starting at p.
  std::vector<std::size_t> longest(f.size(), 0);
  std::vector<Point> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Point a, Point b) { return popcount(f.up(a)) < popcount(f.up(b)); });
  std::size_t best = 0;
  for (Point p : order) {
    std::size_t h = 0;
    for (Point q : members(f.strict_up(p))) h = std::max(h, longest[q]);
    longest[p] = h + 1;
    best = std::max(best, longest[p]);
  }
  return best;
}

std::size_t width(const Frame& f) {
  // Dilworth: minimum chain cover = n - maximum matching in the strict order.
  const std::size_t n = f.size();
  std::vector<int> match(n, -1);
  std::size_t matched = 0;
  for (Point a = 0; a < n; ++a) {
    std::vector<bool> seen(n, false);
    auto augment = [&](auto& self, Point x) -> bool {
      for (Point y : members(f.strict_up(x))) {
        if (seen[y]) continue;
        seen[y] = true;
        if (match[y] < 0 || self(self, static_cast<Point>(match[y]))) {
          match[y] = static_cast<int>(x);
          return true;
        }
      }
      return false;
    };
    if (augment(augment, a)) ++matched;
  }
  return n - matched;
}

std::size_t branching(const Frame& f) {
  std::size_t best = 0;
  for (Point p = 0; p < f.size(); ++p) best = std::max<std::size_t>(best, popcount(f.covers_of(p)));
  return best;
}

Frame comb(std::size_t k) {
  if (k < 1) throw FrameError("comb needs k >= 1");
  std::vector<std::pair<Point, Point>> c;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) {
    labels.push_back("t" + std::to_string(i));
    labels.push_back("u" + std::to_string(i));
    c.emplace_back(comb_trunk(i), comb_tooth(i));
    if (i < k) c.emplace_back(comb_trunk(i), comb_trunk(i + 1));
  }
  return Frame::from_covers(2 * k, c, std::move(labels));
}

Frame fine_ladder(std::size_t k) {
  const std::size_t levels = k + 1;
  if (3 + 3 * (levels + 1) + k > kMaxPoints) throw FrameError("fine_ladder too large for a 64-point frame");
  std::vector<std::pair<Point, Point>> c;
  std::vector<std::string> labels{"m1", "m2"};
  auto add = [&](std::string name) {
    labels.push_back(std::move(name));
    return static_cast<Point>(labels.size() - 1);
  };
  // b[i + 1], c[i + 1] are the rung points b_i, c_i; b[0] = m2, c[0] = m1.
  std::vector<Point> b{1}, cc{0}, d;
  for (std::size_t i = 0; i <= levels; ++i) {
    b.push_back(add("b" + std::to_string(i)));
    cc.push_back(add("c" + std::to_string(i)));
    c.emplace_back(b[i + 1], b[i]);
    c.emplace_back(cc[i + 1], cc[i]);
    if (i >= 1) {
      c.emplace_back(b[i + 1], cc[i - 1]);
      c.emplace_back(cc[i + 1], b[i - 1]);
    }
  }
  for (std::size_t i = 0; i <= levels; ++i) {
    d.push_back(add("d" + std::to_string(i)));
    c.emplace_back(d[i], b[i + 1]);
    c.emplace_back(d[i], cc[i + 1]);
  }
  std::vector<Point> x;
  for (std::size_t i = 0; i <= k; ++i) x.push_back(add("x" + std::to_string(i)));
  for (std::size_t i = 0; i <= k; ++i) {
    c.emplace_back(x[i], d[i]);
    if (i < k) c.emplace_back(x[i], x[i + 1]);
  }
  const std::size_t n = labels.size();
  return Frame::from_covers(n, c, std::move(labels));
}

bool isomorphic(const Frame& a, const Frame& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  auto sig = [](const Frame& f, Point p) {
    return std::pair{popcount(f.up(p)), popcount(f.down(p))};
  };
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  auto go = [&](auto& self, Point i) -> bool {
    if (i == n) return true;
    for (Point j = 0; j < n; ++j) {
      if (used[j] || sig(a, i) != sig(b, j)) continue;
      bool ok = true;
      for (Point k = 0; k < i && ok; ++k) {
        const auto jk = static_cast<Point>(image[k]);
        ok = a.leq(i, k) == b.leq(j, jk) && a.leq(k, i) == b.leq(jk, j);
      }
      if (!ok) continue;
      image[i] = static_cast<int>(j);
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    image[i] = -1;
    return false;
  };
  return go(go, 0);
}

std::string dot_export(const Frame& f, const std::map<Point, std::string>& annotations) {
  std::ostringstream out;
  out << "digraph frame {\n  rankdir=BT;\n";
  for (Point p = 0; p < f.size(); ++p) {
    std::string label = f.label(p);
    if (auto it = annotations.find(p); it != annotations.end()) label += "\\n" + it->second;
    std::string escaped;
    for (char c : label) {
      if (c == '"') escaped += '\\';
      escaped += c;
    }
    out << "  " << p << " [label=\"" << escaped << "\"];\n";
  }
  for (auto [a, b] : f.covers()) out << "  " << a << " -> " << b << ";\n";
  out << "}\n";
  return out.str();
}

Frame frame_from_dot(const std::string& dot) {
  static const std::regex node(R"(^\s*(\d+)\s*\[)");
  static const std::regex edge(R"(^\s*(\d+)\s*->\s*(\d+)\s*;)");
  std::size_t n = 0;
  std::vector<std::pair<Point, Point>> covers;
  std::istringstream in(dot);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, edge)) {
      covers.emplace_back(std::stoul(m[1]), std::stoul(m[2]));
    } else if (std::regex_search(line, m, node)) {
      n = std::max<std::size_t>(n, std::stoul(m[1]) + 1);
    }
  }
  return Frame::from_covers(n, covers);
}

}  // namespace kripke
