// Decision procedure for intuitionistic propositional logic: backward proof
// search in Dyckhoff's contraction-free sequent calculus G4ip. Every rule
// premise is smaller than its conclusion in the calculus' multiset order,
// so the search terminates without loop checking.
//
// Invertible rules are applied eagerly; the two non-invertible rules
// (right disjunction, left implication with an implication antecedent)
// are tried in turn. Sequents are memoised on (context set, goal).
// Sequents refuted in a fixed pool of small Kripke models (one-point
// models, i.e. classical valuations, and for few variables all models on
// small rooted posets) are cut off at once; the pool only prunes branches
// that have no derivation, so every Provable verdict still rests on a
// complete G4ip derivation. The same pool guides a weakening step: before
// searching, hypotheses the pool considers unnecessary are dropped and the
// smaller sequent is tried first.

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "kripke/semantics.hpp"

namespace kripke {
namespace {

using Id = std::uint32_t;

struct Term {
  Connective op;
  Id a, b;
  Var var;
};

// Disjoint union of small models packed into frames of at most 64 points.
class ModelPool {
 public:
  struct Pack {
    Frame frame;
    std::map<Var, PointSet> valuation;
  };

  explicit ModelPool(const std::set<Var>& vars) {
    const std::vector<Var> vs(vars.begin(), vars.end());
    std::size_t max_points = vs.size() <= 2 ? 4 : vs.size() == 3 ? 3 : 1;
    if (vs.size() > 14) return;
    for (std::size_t n = 1; n <= max_points; ++n) {
      for (const Frame& f : enumerate_posets(n, true)) {
        const auto ups = n == 1 ? std::vector<Upset>{0, 1} : upsets(f);
        std::vector<std::size_t> digit(vs.size(), 0);
        while (true) {
          std::map<Var, PointSet> val;
          for (std::size_t i = 0; i < vs.size(); ++i) val[vs[i]] = ups[digit[i]];
          add(f, val);
          std::size_t i = 0;
          while (i < vs.size() && ++digit[i] == ups.size()) digit[i++] = 0;
          if (i == vs.size()) break;
        }
      }
    }
    flush();
  }

  const std::vector<Pack>& packs() const noexcept { return packs_; }
  PointSet value(std::size_t pack, Var v) const {
    auto it = packs_[pack].valuation.find(v);
    return it == packs_[pack].valuation.end() ? 0 : it->second;
  }

 private:
  void add(const Frame& f, const std::map<Var, PointSet>& val) {
    if (size_ + f.size() > kMaxPoints) flush();
    const auto off = static_cast<Point>(size_);
    for (auto [a, b] : f.covers()) covers_.emplace_back(a + off, b + off);
    for (const auto& [v, s] : val) pending_[v] |= s << off;
    size_ += f.size();
  }

  void flush() {
    if (size_ == 0) return;
    packs_.push_back({Frame::from_covers(size_, covers_), pending_});
    size_ = 0;
    covers_.clear();
    pending_.clear();
  }

  std::vector<Pack> packs_;
  std::size_t size_ = 0;
  std::vector<std::pair<Point, Point>> covers_;
  std::map<Var, PointSet> pending_;
};

class Prover {
 public:
  explicit Prover(ProofStats* stats) : stats_(stats) {}

  Id intern(Connective op, Id a, Id b, Var var) {
    const auto key = std::make_tuple(op, a, b, var);
    if (auto it = cons_.find(key); it != cons_.end()) return it->second;
    terms_.push_back({op, a, b, var});
    const auto id = static_cast<Id>(terms_.size() - 1);
    cons_.emplace(key, id);
    return id;
  }

  Id lower(const Formula& f) {
    if (auto it = lowered_.find(f.node()); it != lowered_.end()) return it->second;
    Id id = 0;
    switch (f.op()) {
      case Connective::Bot:
        id = bot();
        break;
      case Connective::Var:
        id = intern(Connective::Var, 0, 0, f.index());
        break;
      default:
        id = intern(f.op(), lower(f.lhs()), lower(f.rhs()), 0);
    }
    lowered_.emplace(f.node(), id);
    return id;
  }

  bool prove(std::vector<Id> ctx, Id goal) {
    if (stats_) ++stats_->sequents;
    // Right-invertible rules.
    while (true) {
      const Term g = terms_[goal];
      if (g.op == Connective::Imp) {
        ctx.push_back(g.a);
        goal = g.b;
      } else if (g.op == Connective::And) {
        return prove(ctx, g.a) && prove(ctx, g.b);
      } else {
        break;
      }
    }
    if (normalise(ctx)) return true;
    if (std::binary_search(ctx.begin(), ctx.end(), goal)) return true;
    if (!survives_pool(ctx, goal)) return false;

    const Key key{ctx, goal};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    // Weakening is admissible, so a derivation from fewer hypotheses is
    // enough; drop every hypothesis the pool deems unnecessary and try that
    // first, falling back to the full context.
    std::vector<Id> core = ctx;
    for (std::size_t i = core.size(); i-- > 0;) {
      std::vector<Id> trial = core;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (survives_pool(trial, goal)) core = std::move(trial);
    }
    bool result = core.size() < ctx.size() && prove(core, goal);
    if (!result) result = search(ctx, goal);
    memo_.emplace(key, result);
    return result;
  }

 private:
  struct Key {
    std::vector<Id> ctx;
    Id goal;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = k.goal * 0x9e3779b97f4a7c15ULL;
      for (Id x : k.ctx) h = (h ^ x) * 0x100000001b3ULL;
      return h;
    }
  };

  Id bot() { return intern(Connective::Bot, 0, 0, 0); }

 public:
  void set_pool(const ModelPool* pool) { pool_ = pool; }

 private:
  using Truth = std::vector<PointSet>;

  const Truth& truth(Id id) {
    if (auto it = truths_.find(id); it != truths_.end()) return it->second;
    const Term t = terms_[id];
    const auto& packs = pool_->packs();
    Truth out(packs.size(), 0);
    switch (t.op) {
      case Connective::Bot:
        break;
      case Connective::Var:
        for (std::size_t i = 0; i < packs.size(); ++i) out[i] = pool_->value(i, t.var);
        break;
      default: {
        const Truth a = truth(t.a);
        const Truth& b = truth(t.b);
        for (std::size_t i = 0; i < packs.size(); ++i) {
          if (t.op == Connective::And) {
            out[i] = a[i] & b[i];
          } else if (t.op == Connective::Or) {
            out[i] = a[i] | b[i];
          } else {
            const PointSet bad = a[i] & ~b[i];
            out[i] = packs[i].frame.all() & ~packs[i].frame.down_closure(bad);
          }
        }
      }
    }
    return truths_.emplace(id, std::move(out)).first->second;
  }

  // True unless some pooled point forces the whole context but not the goal.
  bool survives_pool(const std::vector<Id>& ctx, Id goal) {
    if (!pool_ || pool_->packs().empty()) return true;
    Truth acc = truth(goal);
    const auto& packs = pool_->packs();
    for (std::size_t i = 0; i < packs.size(); ++i) acc[i] = packs[i].frame.all() & ~acc[i];
    for (Id h : ctx) {
      const Truth& t = truth(h);
      for (std::size_t i = 0; i < packs.size(); ++i) acc[i] &= t[i];
    }
    return std::all_of(acc.begin(), acc.end(), [](PointSet x) { return x == 0; });
  }
  Id imp(Id a, Id b) { return intern(Connective::Imp, a, b, 0); }

  // Applies the non-branching invertible left rules to saturation; leaves
  // ctx sorted and duplicate-free. Returns true when false is in context.
  bool normalise(std::vector<Id>& ctx) {
    std::vector<Id> todo = std::move(ctx);
    std::vector<Id> out;
    std::vector<Id> atoms;      // atoms (and bot) already in out
    std::vector<Id> waiting;    // p -> B with p not yet available
    auto has_atom = [&](Id p) { return std::find(atoms.begin(), atoms.end(), p) != atoms.end(); };
    while (!todo.empty()) {
      const Id h = todo.back();
      todo.pop_back();
      const Term t = terms_[h];
      switch (t.op) {
        case Connective::Bot:
          return true;
        case Connective::Var:
          if (!has_atom(h)) {
            atoms.push_back(h);
            out.push_back(h);
            // Release implications waiting on this atom.
            for (auto it = waiting.begin(); it != waiting.end();) {
              if (terms_[*it].a == h) {
                todo.push_back(terms_[*it].b);
                it = waiting.erase(it);
              } else {
                ++it;
              }
            }
          }
          break;
        case Connective::And:
          todo.push_back(t.a);
          todo.push_back(t.b);
          break;
        case Connective::Imp: {
          const Term ante = terms_[t.a];
          switch (ante.op) {
            case Connective::Bot:
              break;  // false -> C is useless
            case Connective::Var:
              if (has_atom(t.a))
                todo.push_back(t.b);
              else
                waiting.push_back(h);
              break;
            case Connective::And:
              todo.push_back(imp(ante.a, imp(ante.b, t.b)));
              break;
            case Connective::Or:
              todo.push_back(imp(ante.a, t.b));
              todo.push_back(imp(ante.b, t.b));
              break;
            default:
              out.push_back(h);
          }
          break;
        }
        default:
          out.push_back(h);
      }
    }
    out.insert(out.end(), waiting.begin(), waiting.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    ctx = std::move(out);
    return false;
  }

  bool search(const std::vector<Id>& ctx, Id goal) {
    // Left disjunction (invertible, branching).
    for (Id h : ctx) {
      const Term t = terms_[h];
      if (t.op != Connective::Or) continue;
      auto with = [&](Id x) {
        std::vector<Id> c;
        for (Id y : ctx)
          if (y != h) c.push_back(y);
        c.push_back(x);
        return c;
      };
      return prove(with(t.a), goal) && prove(with(t.b), goal);
    }
    const Term g = terms_[goal];
    if (g.op == Connective::Or && (prove(ctx, g.a) || prove(ctx, g.b))) return true;
    for (Id h : ctx) {
      const Term t = terms_[h];
      if (t.op != Connective::Imp || terms_[t.a].op != Connective::Imp) continue;
      // (A -> B) -> C:  from  B -> C, G => A -> B  and  C, G => goal
      const Term ab = terms_[t.a];
      std::vector<Id> rest;
      for (Id y : ctx)
        if (y != h) rest.push_back(y);
      auto left = rest;
      left.push_back(imp(ab.b, t.b));
      if (!prove(std::move(left), t.a)) continue;
      rest.push_back(t.b);
      if (prove(std::move(rest), goal)) return true;
    }
    return false;
  }

  ProofStats* stats_;
  std::vector<Term> terms_;
  std::map<std::tuple<Connective, Id, Id, Var>, Id> cons_;
  std::unordered_map<const detail::Node*, Id> lowered_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  const ModelPool* pool_ = nullptr;
  std::unordered_map<Id, Truth> truths_;
};

}  // namespace

IntVerdict decide_int(const Formula& f, ProofStats* stats) {
  Prover prover(stats);
  const ModelPool pool(f.variables());
  prover.set_pool(&pool);
  const Id goal = prover.lower(f);
  return prover.prove({}, goal) ? IntVerdict::Provable : IntVerdict::Refutable;
}

}  // namespace kripke
