#include <algorithm>
#include <set>

#include "kripke/error.hpp"
#include "kripke/semantics.hpp"

namespace kripke {

Upset relative_complement(const Frame& f, Upset u, Upset v) {
  const PointSet bad = u & ~v;
  return f.all() & ~f.down_closure(bad);
}

bool is_closed_family(const Frame& f, std::span<const Upset> family) {
  const std::set<Upset> s(family.begin(), family.end());
  if (!s.contains(0) || !s.contains(f.all())) return false;
  for (Upset a : s) {
    if (!f.is_upset(a)) return false;
    for (Upset b : s)
      if (!s.contains(a & b) || !s.contains(a | b) || !s.contains(relative_complement(f, a, b))) return false;
  }
  return true;
}

GeneralFrame::GeneralFrame(Frame frame, std::vector<Upset> admissible)
    : frame_(std::move(frame)), admissible_(std::move(admissible)) {
  std::sort(admissible_.begin(), admissible_.end());
  admissible_.erase(std::unique(admissible_.begin(), admissible_.end()), admissible_.end());
  if (!is_closed_family(frame_, admissible_))
    throw Error("admissible family must contain the empty set and W and be closed under "
                "intersection, union and relative pseudo-complement");
}

GeneralFrame GeneralFrame::full(const Frame& f) { return GeneralFrame(f, upsets(f)); }

bool GeneralFrame::is_admissible(Upset u) const {
  return std::binary_search(admissible_.begin(), admissible_.end(), u);
}

GeneralFrame admissible_closure(const Frame& f, std::span<const Upset> seeds, std::size_t cap) {
  std::set<Upset> known;
  std::vector<Upset> order;
  auto add = [&](Upset u) {
    if (known.insert(u).second) {
      if (known.size() > cap) throw ResourceError("admissible closure exceeds cap", known.size(), cap);
      order.push_back(u);
    }
  };
  add(0);
  add(f.all());
  for (Upset s : seeds) {
    if (!subset(s, f.all()) || !f.is_upset(s)) throw Error("closure seed is not an upset of the frame");
    add(s);
  }
  // Combine each new element with everything seen before it (both orders).
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Upset a = order[i], b = order[j];
      add(a & b);
      add(a | b);
      add(relative_complement(f, a, b));
      add(relative_complement(f, b, a));
    }
  }
  return GeneralFrame(f, std::vector<Upset>(known.begin(), known.end()));
}

}  // namespace kripke
