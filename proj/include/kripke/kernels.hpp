#pragma once

// Valuation-search kernels. A formula is compiled once into straight-line
// code over point bitsets; the search then walks the tuple space of
// valuations. The serial kernel is the reference; the OpenMP kernel splits
// the space into blocks and reduces to the same (minimal) failing tuple.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"

namespace kripke::kernels {

enum class Opcode : std::uint8_t { Bot, Load, And, Or, IntImp, MatImp, Box };

struct Instr {
  Opcode op;
  std::uint32_t a;
  std::uint32_t b;
};

class Program {
 public:
  // Intuitionistic reading: -> quantifies over successors.
  static Program compile(const Formula& f);
  // Modal reading: -> is material, Box quantifies over successors.
  static Program compile(const ModalFormula& f);

  // Slot i of a valuation holds the value of variables()[i] (ascending).
  const std::vector<Var>& variables() const noexcept { return vars_; }
  std::size_t length() const noexcept { return code_.size(); }

  // `regs` must hold at least length() entries. Returns the truth set.
  PointSet eval(const Frame& frame, const PointSet* slots, PointSet* regs) const;

 private:
  std::vector<Instr> code_;
  std::vector<Var> vars_;
  std::uint32_t root_ = 0;
};

// Tuple space: every variable slot ranges over `candidates`; tuple t has
// slot 0 as its most significant base-|candidates| digit.
struct Space {
  std::span<const PointSet> candidates;
  std::size_t arity;

  // Saturates at UINT64_MAX.
  std::uint64_t count() const;
  void decode(std::uint64_t t, PointSet* slots) const;
};

// Index of the first tuple whose truth set is not all of W.
std::optional<std::uint64_t> first_failure_serial(const Frame& frame, const Program& prog, const Space& space);
std::optional<std::uint64_t> first_failure_parallel(const Frame& frame, const Program& prog,
                                                    const Space& space);

int max_threads();

}  // namespace kripke::kernels
