#include <bit>
#include <vector>

#include "kripke/error.hpp"
#include "kripke/kernels.hpp"
#include "kripke/semantics.hpp"

namespace kripke {
namespace {

ValidityResult search(const Frame& frame, const kernels::Program& prog, std::span<const PointSet> candidates,
                      const SearchOptions& opts) {
  const kernels::Space space{candidates, prog.variables().size()};
  const std::uint64_t total = space.count();
  if (total > opts.budget) throw ResourceError("valuation search exceeds budget", total, opts.budget);
  const auto hit = opts.parallel ? kernels::first_failure_parallel(frame, prog, space)
                                 : kernels::first_failure_serial(frame, prog, space);
  ValidityResult r{!hit.has_value(), std::nullopt, total};
  if (hit) {
    std::vector<PointSet> slots(space.arity);
    space.decode(*hit, slots.data());
    std::vector<PointSet> regs(prog.length());
    const PointSet truth = prog.eval(frame, slots.data(), regs.data());
    Refutation ref{{}, static_cast<Point>(std::countr_zero(frame.all() & ~truth))};
    for (std::size_t i = 0; i < slots.size(); ++i) ref.valuation[prog.variables()[i]] = slots[i];
    r.refutation = std::move(ref);
  }
  return r;
}

}  // namespace

ValidityResult valid_on_frame(const Frame& frame, const Formula& f, const SearchOptions& opts) {
  const auto prog = kernels::Program::compile(f);
  if (prog.variables().empty()) return search(frame, prog, {}, opts);
  const auto ups = upsets(frame);
  return search(frame, prog, ups, opts);
}

ValidityResult valid_on_general(const GeneralFrame& g, const Formula& f, const SearchOptions& opts) {
  const auto prog = kernels::Program::compile(f);
  return search(g.frame(), prog, g.admissible(), opts);
}

ValidityResult modal_valid(const Frame& frame, const ModalFormula& f, const SearchOptions& opts) {
  const auto prog = kernels::Program::compile(f);
  const std::size_t n = frame.size();
  const std::uint64_t per_var = n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n;
  if (!prog.variables().empty() && per_var > opts.budget)
    throw ResourceError("modal valuation search exceeds budget", per_var, opts.budget);
  std::vector<PointSet> subsets;
  if (!prog.variables().empty())
    for (PointSet s = 0; s < per_var; ++s) subsets.push_back(s);
  return search(frame, prog, subsets, opts);
}

std::optional<Countermodel> countermodel_search(const Formula& f, std::size_t max_points,
                                                const SearchOptions& opts) {
  if (max_points > kMaxCountermodelPoints)
    throw ResourceError("countermodel search bound exceeds cap", max_points, kMaxCountermodelPoints);
  const auto prog = kernels::Program::compile(f);
  for (std::size_t n = 1; n <= max_points; ++n) {
    for (const Frame& frame : enumerate_posets(n, true, kMaxCountermodelPoints)) {
      const auto ups = upsets(frame);
      const auto r = search(frame, prog, ups, opts);
      // Persistence: a rooted frame is refuted somewhere iff at its root.
      if (!r.valid) {
        Countermodel cm{{frame, r.refutation->valuation}, 0};
        for (Var v : f.variables()) cm.model.valuation.try_emplace(v, 0);
        return cm;
      }
    }
  }
  return std::nullopt;
}

}  // namespace kripke
