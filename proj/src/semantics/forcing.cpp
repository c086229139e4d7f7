#include <string>
#include <vector>

#include "kripke/error.hpp"
#include "kripke/kernels.hpp"
#include "kripke/semantics.hpp"

namespace kripke {
namespace {

std::vector<PointSet> slots_for(const kernels::Program& prog, const Valuation& v) {
  std::vector<PointSet> slots;
  for (Var x : prog.variables()) {
    auto it = v.find(x);
    if (it == v.end()) throw Error("valuation does not assign p" + std::to_string(x));
    slots.push_back(it->second);
  }
  return slots;
}

}  // namespace

PointSet truth_set(const Model& m, const Formula& f) {
  for (const auto& [x, s] : m.valuation)
    if (!subset(s, m.frame.all()) || !m.frame.is_upset(s))
      throw Error("valuation of p" + std::to_string(x) + " is not an upset of the frame");
  const auto prog = kernels::Program::compile(f);
  const auto slots = slots_for(prog, m.valuation);
  std::vector<PointSet> regs(prog.length());
  return prog.eval(m.frame, slots.data(), regs.data());
}

bool forces(const Model& m, Point w, const Formula& f) {
  if (w >= m.frame.size()) throw Error("point " + std::to_string(w) + " is not in the frame");
  return contains(truth_set(m, f), w);
}

PointSet modal_truth_set(const Frame& frame, const Valuation& v, const ModalFormula& phi) {
  for (const auto& [x, s] : v)
    if (!subset(s, frame.all())) throw Error("valuation of p" + std::to_string(x) + " is out of range");
  const auto prog = kernels::Program::compile(phi);
  const auto slots = slots_for(prog, v);
  std::vector<PointSet> regs(prog.length());
  return prog.eval(frame, slots.data(), regs.data());
}

bool modal_forces(const Frame& frame, Point w, const ModalFormula& phi, const Valuation& v) {
  if (w >= frame.size()) throw Error("point " + std::to_string(w) + " is not in the frame");
  return contains(modal_truth_set(frame, v, phi), w);
}

}  // namespace kripke
