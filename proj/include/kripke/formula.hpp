#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace kripke {

using Var = std::uint32_t;

enum class Connective : std::uint8_t { Bot, Var, And, Or, Imp, Box };

namespace detail {

// Immutable node shared between formulas. Subtrees are shared freely, so a
// formula is a DAG; `size` is the node count of the unfolded tree and
// saturates at UINT64_MAX.
struct Node {
  Connective op;
  Var var;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::size_t hash;
  std::uint64_t size;
  std::uint32_t depth;
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Connective op, Var var, NodePtr lhs, NodePtr rhs);
bool deep_equal(const Node* a, const Node* b);
std::set<Var> collect_variables(const Node* root);
std::size_t count_distinct_nodes(const Node* root);

// CRTP base holding the node handle and the queries common to both languages.
template <class Derived>
class FormulaBase {
 public:
  Connective op() const noexcept { return node_->op; }
  // Only meaningful when op() == Connective::Var.
  Var index() const noexcept { return node_->var; }
  Derived lhs() const { return Derived(node_->lhs); }
  Derived rhs() const { return Derived(node_->rhs); }
  bool is(Connective c) const noexcept { return node_->op == c; }

  std::uint64_t size() const noexcept { return node_->size; }
  std::uint32_t depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }
  std::size_t dag_size() const { return count_distinct_nodes(node_.get()); }
  std::set<Var> variables() const { return collect_variables(node_.get()); }

  // Identity of the shared node, usable as a memoisation key.
  const Node* node() const noexcept { return node_.get(); }
  const NodePtr& handle() const noexcept { return node_; }

  friend bool operator==(const Derived& a, const Derived& b) {
    return deep_equal(a.node_.get(), b.node_.get());
  }

 protected:
  explicit FormulaBase(NodePtr node) : node_(std::move(node)) {}
  NodePtr node_;
};

}  // namespace detail

// Intuitionistic propositional formula over Bot, Var, And, Or, Imp.
class Formula : public detail::FormulaBase<Formula> {
 public:
  static Formula bot();
  static Formula top();
  static Formula var(Var i);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula imp(const Formula& a, const Formula& b);
  static Formula neg(const Formula& a) { return imp(a, bot()); }
  static Formula iff(const Formula& a, const Formula& b) { return conj(imp(a, b), imp(b, a)); }

  explicit Formula(detail::NodePtr node) : FormulaBase(std::move(node)) {}
};

// Modal formula: the intuitionistic connectives (read classically) plus Box.
class ModalFormula : public detail::FormulaBase<ModalFormula> {
 public:
  static ModalFormula bot();
  static ModalFormula var(Var i);
  static ModalFormula conj(const ModalFormula& a, const ModalFormula& b);
  static ModalFormula disj(const ModalFormula& a, const ModalFormula& b);
  static ModalFormula imp(const ModalFormula& a, const ModalFormula& b);
  static ModalFormula box(const ModalFormula& a);

  explicit ModalFormula(detail::NodePtr node) : FormulaBase(std::move(node)) {}
};

inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disj(a, b); }
inline Formula operator>>(const Formula& a, const Formula& b) { return Formula::imp(a, b); }

// Surface syntax. Variables are `p0`, `p1`, ... with aliases p, q, r for
// p0, p1, p2; constants `false` and `true`; operators by decreasing binding
// strength: `~` (and `[]` in modal text), `&`, `|`, `->`, `<->`. `&` and `|`
// associate to the left, `->` and `<->` to the right. `~`, `<->` and `true`
// are desugared while parsing.
Formula parse(std::string_view text);
ModalFormula parse_modal(std::string_view text);

std::string print(const Formula& f);
std::string print(const ModalFormula& f);

// Uniform substitution; variables without an entry are left fixed.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<Var, Formula> images) : images_(std::move(images)) {}

  static Substitution identity() { return {}; }

  void set(Var v, Formula image);
  Formula image(Var v) const;
  const std::map<Var, Formula>& images() const noexcept { return images_; }

  Formula apply(const Formula& f) const;
  // (this ∘ other): first other, then this.
  Substitution after(const Substitution& other) const;

 private:
  std::map<Var, Formula> images_;
};

inline Formula substitute(const Formula& f, const Substitution& s) { return s.apply(f); }

inline constexpr std::uint64_t kDefaultNodeCap = 1'000'000;

// s applied n times. Throws ResourceError once the unfolded tree size of an
// intermediate result exceeds `node_cap`.
Formula iterate(const Substitution& s, unsigned n, const Formula& f,
                std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace kripke

template <>
struct std::hash<kripke::Formula> {
  std::size_t operator()(const kripke::Formula& f) const noexcept { return f.hash(); }
};
