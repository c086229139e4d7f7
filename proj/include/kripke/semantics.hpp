#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"

namespace kripke {

// Variable -> upset (intuitionistic) or arbitrary subset (modal).
using Valuation = std::map<Var, PointSet>;

struct Model {
  Frame frame;
  Valuation valuation;
};

// Points forcing f. Throws Error when f mentions an unassigned variable.
PointSet truth_set(const Model& m, const Formula& f);
bool forces(const Model& m, Point w, const Formula& f);

// Box is read over the frame order; -> is material implication.
PointSet modal_truth_set(const Frame& f, const Valuation& v, const ModalFormula& phi);
bool modal_forces(const Frame& f, Point w, const ModalFormula& phi, const Valuation& v);

// Frame plus a family of admissible upsets closed under intersection,
// union and relative pseudo-complement, containing the empty set and W.
class GeneralFrame {
 public:
  // Checked: throws Error if the family is not closed or not made of upsets.
  GeneralFrame(Frame frame, std::vector<Upset> admissible);

  // All upsets admissible.
  static GeneralFrame full(const Frame& f);

  const Frame& frame() const noexcept { return frame_; }
  // Sorted ascending.
  const std::vector<Upset>& admissible() const noexcept { return admissible_; }
  bool is_admissible(Upset u) const;

 private:
  Frame frame_;
  std::vector<Upset> admissible_;
};

// U => V = {w : every v >= w in U is in V}
Upset relative_complement(const Frame& f, Upset u, Upset v);

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 16;

// Least admissible family containing seeds, the empty set and W; computed
// by saturation.
GeneralFrame admissible_closure(const Frame& f, std::span<const Upset> seeds,
                                std::size_t cap = kDefaultClosureCap);
bool is_closed_family(const Frame& f, std::span<const Upset> family);

inline constexpr std::uint64_t kDefaultValuationBudget = 10'000'000;

struct SearchOptions {
  std::uint64_t budget = kDefaultValuationBudget;
  bool parallel = true;
};

struct Refutation {
  Valuation valuation;
  Point point;
};

struct ValidityResult {
  bool valid;
  std::optional<Refutation> refutation;
  // Tuple count of the whole search space.
  std::uint64_t space;
};

// Validity under every valuation of f's variables into upsets. Variables
// range over the candidate list in lexicographic order, first variable most
// significant; the reported refutation is the first failing tuple and its
// least refuting point. Throws ResourceError when the tuple count exceeds
// the budget.
ValidityResult valid_on_frame(const Frame& frame, const Formula& f, const SearchOptions& opts = {});
ValidityResult valid_on_general(const GeneralFrame& g, const Formula& f, const SearchOptions& opts = {});
// Quantifies over arbitrary subsets of W.
ValidityResult modal_valid(const Frame& frame, const ModalFormula& f, const SearchOptions& opts = {});

struct Countermodel {
  Model model;
  Point point;  // the root
};

inline constexpr std::size_t kMaxCountermodelPoints = 6;

// Smallest rooted poset (by size, then enumeration order) with the first
// valuation whose root refutes f. Throws ResourceError for max_points above
// kMaxCountermodelPoints.
std::optional<Countermodel> countermodel_search(const Formula& f, std::size_t max_points,
                                                const SearchOptions& opts = {});

enum class IntVerdict { Provable, Refutable };

struct ProofStats {
  std::uint64_t sequents = 0;
  std::uint64_t memo_hits = 0;
};

// Terminating backward search in the contraction-free calculus G4ip.
IntVerdict decide_int(const Formula& f, ProofStats* stats = nullptr);

}  // namespace kripke
