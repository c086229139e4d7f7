#include "kripke/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kripke/error.hpp"

namespace kripke::kernels {
namespace {

template <class F>
class Compiler {
 public:
  Compiler(bool modal, std::vector<Instr>& code, std::vector<Var>& vars)
      : modal_(modal), code_(code), vars_(vars) {}

  std::uint32_t run(const F& f) {
    vars_.clear();
    for (Var v : f.variables()) vars_.push_back(v);
    for (std::size_t i = 0; i < vars_.size(); ++i) slot_[vars_[i]] = static_cast<std::uint32_t>(i);
    return emit(f);
  }

 private:
  std::uint32_t intern(Instr in) {
    const auto key = std::make_tuple(in.op, in.a, in.b);
    if (auto it = cons_.find(key); it != cons_.end()) return it->second;
    code_.push_back(in);
    const auto reg = static_cast<std::uint32_t>(code_.size() - 1);
    cons_.emplace(key, reg);
    return reg;
  }

  std::uint32_t emit(const F& f) {
    if (auto it = done_.find(f.node()); it != done_.end()) return it->second;
    std::uint32_t reg = 0;
    switch (f.op()) {
      case Connective::Bot:
        reg = intern({Opcode::Bot, 0, 0});
        break;
      case Connective::Var:
        reg = intern({Opcode::Load, slot_.at(f.index()), 0});
        break;
      case Connective::Box:
        reg = intern({Opcode::Box, emit(f.lhs()), 0});
        break;
      default: {
        const std::uint32_t a = emit(f.lhs());
        const std::uint32_t b = emit(f.rhs());
        const Opcode op = f.op() == Connective::And  ? Opcode::And
                          : f.op() == Connective::Or ? Opcode::Or
                          : modal_                   ? Opcode::MatImp
                                                     : Opcode::IntImp;
        reg = intern({op, a, b});
      }
    }
    done_.emplace(f.node(), reg);
    return reg;
  }

  bool modal_;
  std::vector<Instr>& code_;
  std::vector<Var>& vars_;
  std::map<Var, std::uint32_t> slot_;
  std::map<std::tuple<Opcode, std::uint32_t, std::uint32_t>, std::uint32_t> cons_;
  std::unordered_map<const detail::Node*, std::uint32_t> done_;
};

constexpr std::uint64_t kBlock = 1024;

}  // namespace

Program Program::compile(const Formula& f) {
  Program p;
  p.root_ = Compiler<Formula>(false, p.code_, p.vars_).run(f);
  return p;
}

Program Program::compile(const ModalFormula& f) {
  Program p;
  p.root_ = Compiler<ModalFormula>(true, p.code_, p.vars_).run(f);
  return p;
}

PointSet Program::eval(const Frame& frame, const PointSet* slots, PointSet* regs) const {
  const PointSet all = frame.all();
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    PointSet r = 0;
    switch (in.op) {
      case Opcode::Bot:
        r = 0;
        break;
      case Opcode::Load:
        r = slots[in.a];
        break;
      case Opcode::And:
        r = regs[in.a] & regs[in.b];
        break;
      case Opcode::Or:
        r = regs[in.a] | regs[in.b];
        break;
      case Opcode::IntImp: {
        // w forces a -> b iff no v >= w is in a \ b.
        const PointSet bad = regs[in.a] & ~regs[in.b];
        r = bad ? all & ~frame.down_closure(bad) : all;
        break;
      }
      case Opcode::MatImp:
        r = (~regs[in.a] | regs[in.b]) & all;
        break;
      case Opcode::Box: {
        const PointSet bad = all & ~regs[in.a];
        r = bad ? all & ~frame.down_closure(bad) : all;
        break;
      }
    }
    regs[i] = r;
  }
  return regs[root_];
}

std::uint64_t Space::count() const {
  std::uint64_t total = 1;
  const std::uint64_t base = candidates.size();
  for (std::size_t i = 0; i < arity; ++i) {
    if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    total *= base;
  }
  return total;
}

void Space::decode(std::uint64_t t, PointSet* slots) const {
  const std::uint64_t base = candidates.size();
  for (std::size_t i = arity; i-- > 0;) {
    slots[i] = candidates[t % base];
    t /= base;
  }
}

namespace {

// Scans [begin, end) in order. Odometer increments avoid re-decoding.
std::optional<std::uint64_t> scan(const Frame& frame, const Program& prog, const Space& space,
                                  std::uint64_t begin, std::uint64_t end) {
  const std::size_t k = space.arity;
  const std::size_t base = space.candidates.size();
  std::vector<PointSet> slots(k);
  std::vector<std::size_t> digit(k);
  std::vector<PointSet> regs(std::max<std::size_t>(prog.length(), 1));
  {
    std::uint64_t t = begin;
    for (std::size_t i = k; i-- > 0;) {
      digit[i] = static_cast<std::size_t>(t % base);
      slots[i] = space.candidates[digit[i]];
      t /= base;
    }
  }
  const PointSet all = frame.all();
  for (std::uint64_t t = begin; t < end; ++t) {
    if (prog.eval(frame, slots.data(), regs.data()) != all) return t;
    for (std::size_t i = k; i-- > 0;) {
      if (++digit[i] < base) {
        slots[i] = space.candidates[digit[i]];
        break;
      }
      digit[i] = 0;
      slots[i] = space.candidates[0];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> first_failure_serial(const Frame& frame, const Program& prog, const Space& space) {
  if (space.candidates.empty() && space.arity > 0) return std::nullopt;
  return scan(frame, prog, space, 0, space.count());
}

std::optional<std::uint64_t> first_failure_parallel(const Frame& frame, const Program& prog,
                                                    const Space& space) {
  if (space.candidates.empty() && space.arity > 0) return std::nullopt;
  const std::uint64_t total = space.count();
  if (total <= 4 * kBlock) return scan(frame, prog, space, 0, total);
  const auto blocks = static_cast<std::int64_t>((total + kBlock - 1) / kBlock);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
    if (begin >= best.load(std::memory_order_relaxed)) continue;
    const std::uint64_t end = std::min(total, begin + kBlock);
    if (auto hit = scan(frame, prog, space, begin, end)) {
      std::uint64_t cur = best.load();
      while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
      }
    }
  }
  const std::uint64_t r = best.load();
  if (r == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return r;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kripke::kernels
