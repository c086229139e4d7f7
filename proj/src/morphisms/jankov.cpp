#include <algorithm>
#include <vector>

#include "kripke/error.hpp"
#include "kripke/morphisms.hpp"
#include "kripke/semantics.hpp"

namespace kripke {

JankovFormula jankov_formula(const Frame& f, std::size_t upset_cap) {
  const auto r = root(f);
  if (!r) throw Error("jankov: frame must be rooted");
  const auto ups = upsets(f, upset_cap);
  auto var_of = [&](Upset u) {
    const auto it = std::lower_bound(ups.begin(), ups.end(), u);
    return Formula::var(static_cast<Var>(it - ups.begin()));
  };
  std::vector<Formula> conjuncts;
  for (Upset a : ups) {
    for (Upset b : ups) {
      const Formula qa = var_of(a), qb = var_of(b);
      conjuncts.push_back(Formula::iff(var_of(a & b), qa & qb));
      conjuncts.push_back(Formula::iff(var_of(a | b), qa | qb));
      conjuncts.push_back(Formula::iff(var_of(relative_complement(f, a, b)), qa >> qb));
    }
  }
  conjuncts.push_back(Formula::iff(var_of(0), Formula::bot()));
  Formula diagram = conjuncts.front();
  for (std::size_t i = 1; i < conjuncts.size(); ++i) diagram = diagram & conjuncts[i];
  const Upset omega = f.all() & ~bit(*r);
  return {diagram >> var_of(omega), ups, var_of(omega).index()};
}

}  // namespace kripke
