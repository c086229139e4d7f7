#include "kripke/formula.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kripke/error.hpp"

namespace kripke {
namespace detail {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

struct PairHash {
  std::size_t operator()(const std::pair<const Node*, const Node*>& p) const noexcept {
    return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
  }
};

}  // namespace

NodePtr make_node(Connective op, Var var, NodePtr lhs, NodePtr rhs) {
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, var);
  std::uint64_t size = 1;
  std::uint32_t depth = 0;
  if (lhs) {
    h = mix(h, lhs->hash);
    size = add_sat(size, lhs->size);
    depth = std::max(depth, lhs->depth + 1);
  }
  if (rhs) {
    h = mix(h, rhs->hash);
    size = add_sat(size, rhs->size);
    depth = std::max(depth, rhs->depth + 1);
  }
  return std::make_shared<const Node>(Node{op, var, std::move(lhs), std::move(rhs), h, size, depth});
}

bool deep_equal(const Node* a, const Node* b) {
  // Shared subterms make naive recursion exponential; remember pairs
  // already shown equal.
  std::unordered_set<std::pair<const Node*, const Node*>, PairHash> equal;
  std::vector<std::pair<const Node*, const Node*>> stack{{a, b}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) continue;
    if (x->op != y->op || x->var != y->var || x->hash != y->hash || x->size != y->size) return false;
    if (!equal.insert({x, y}).second) continue;
    if (x->lhs) stack.emplace_back(x->lhs.get(), y->lhs.get());
    if (x->rhs) stack.emplace_back(x->rhs.get(), y->rhs.get());
  }
  return true;
}

std::set<Var> collect_variables(const Node* root) {
  std::set<Var> vars;
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{root};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->op == Connective::Var) vars.insert(n->var);
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
  return vars;
}

std::size_t count_distinct_nodes(const Node* root) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{root};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
  return seen.size();
}

}  // namespace detail

using detail::make_node;

Formula Formula::bot() {
  static const Formula f(make_node(Connective::Bot, 0, nullptr, nullptr));
  return f;
}
Formula Formula::top() { return imp(bot(), bot()); }
Formula Formula::var(Var i) { return Formula(make_node(Connective::Var, i, nullptr, nullptr)); }
Formula Formula::conj(const Formula& a, const Formula& b) {
  return Formula(make_node(Connective::And, 0, a.handle(), b.handle()));
}
Formula Formula::disj(const Formula& a, const Formula& b) {
  return Formula(make_node(Connective::Or, 0, a.handle(), b.handle()));
}
Formula Formula::imp(const Formula& a, const Formula& b) {
  return Formula(make_node(Connective::Imp, 0, a.handle(), b.handle()));
}

ModalFormula ModalFormula::bot() {
  static const ModalFormula f(make_node(Connective::Bot, 0, nullptr, nullptr));
  return f;
}
ModalFormula ModalFormula::var(Var i) {
  return ModalFormula(make_node(Connective::Var, i, nullptr, nullptr));
}
ModalFormula ModalFormula::conj(const ModalFormula& a, const ModalFormula& b) {
  return ModalFormula(make_node(Connective::And, 0, a.handle(), b.handle()));
}
ModalFormula ModalFormula::disj(const ModalFormula& a, const ModalFormula& b) {
  return ModalFormula(make_node(Connective::Or, 0, a.handle(), b.handle()));
}
ModalFormula ModalFormula::imp(const ModalFormula& a, const ModalFormula& b) {
  return ModalFormula(make_node(Connective::Imp, 0, a.handle(), b.handle()));
}
ModalFormula ModalFormula::box(const ModalFormula& a) {
  return ModalFormula(make_node(Connective::Box, 0, a.handle(), nullptr));
}

void Substitution::set(Var v, Formula image) { images_.insert_or_assign(v, std::move(image)); }

Formula Substitution::image(Var v) const {
  auto it = images_.find(v);
  return it == images_.end() ? Formula::var(v) : it->second;
}

Formula Substitution::apply(const Formula& f) const {
  // Memoised on node identity so shared subterms stay shared in the result.
  std::unordered_map<const detail::Node*, detail::NodePtr> memo;
  auto go = [&](auto& self, const detail::NodePtr& n) -> detail::NodePtr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    detail::NodePtr out;
    switch (n->op) {
      case Connective::Bot:
        out = n;
        break;
      case Connective::Var: {
        auto it = images_.find(n->var);
        out = it == images_.end() ? n : it->second.handle();
        break;
      }
      default: {
        auto l = self(self, n->lhs);
        auto r = n->rhs ? self(self, n->rhs) : nullptr;
        out = (l == n->lhs && r == n->rhs) ? n : make_node(n->op, 0, std::move(l), std::move(r));
      }
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return Formula(go(go, f.handle()));
}

Substitution Substitution::after(const Substitution& other) const {
  Substitution out;
  for (const auto& [v, img] : other.images_) out.images_.insert_or_assign(v, apply(img));
  for (const auto& [v, img] : images_) out.images_.try_emplace(v, img);
  return out;
}

Formula iterate(const Substitution& s, unsigned n, const Formula& f, std::uint64_t node_cap) {
  Formula cur = f;
  for (unsigned i = 0; i < n; ++i) {
    cur = s.apply(cur);
    if (cur.size() > node_cap)
      throw ResourceError("iterated substitution exceeds node cap", cur.size(), node_cap);
  }
  return cur;
}

SyntaxError::SyntaxError(std::size_t off, std::vector<std::string> exp, const std::string& found)
    : Error([&] {
        std::string msg = "syntax error at offset " + std::to_string(off) + ": found " + found +
                          ", expected one of:";
        for (const auto& e : exp) msg += " " + e;
        return msg;
      }()),
      offset(off),
      expected(std::move(exp)) {}

ResourceError::ResourceError(const std::string& what, unsigned long long req, unsigned long long lim)
    : Error(what + " (required " + std::to_string(req) + ", limit " + std::to_string(lim) + ")"),
      required(req),
      limit(lim) {}

}  // namespace kripke
