#include "kripke/families.hpp"

#include <string>
#include <vector>

#include "kripke/error.hpp"

namespace kripke {
namespace {

Formula fold_disj(const std::vector<Formula>& xs) {
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = acc | xs[i];
  return acc;
}

Formula fold_conj(const std::vector<Formula>& xs) {
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = acc & xs[i];
  return acc;
}

// beta_k and gamma_k for k = -1..n, stored at offset +1 so subterms are shared.
struct BetaGamma {
  std::vector<Formula> beta, gamma;

  explicit BetaGamma(int n) {
    const Formula p = Formula::var(0), q = Formula::var(1);
    beta = {p, q >> p};
    gamma = {q, p >> q};
    for (int k = 0; k < n; ++k) {
      // index k sits at k+1
      const auto b = beta[k + 1], g = gamma[k + 1], bp = beta[k], gp = gamma[k];
      beta.push_back(g >> (b | gp));
      gamma.push_back(b >> (g | bp));
    }
  }
  const Formula& b(int k) const { return beta[k + 1]; }
  const Formula& g(int k) const { return gamma[k + 1]; }
};

Formula alpha(const BetaGamma& bg, int n) {
  return (bg.b(n + 2) & bg.g(n + 2)) >> (bg.b(n + 1) | bg.g(n + 1));
}

}  // namespace

Formula gabbay_de_jongh(unsigned n) {
  if (n < 1) throw Error("gabbay_de_jongh requires n >= 1");
  std::vector<Formula> vars;
  for (unsigned i = 0; i <= n; ++i) vars.push_back(Formula::var(i));
  std::vector<Formula> conjuncts;
  for (unsigned i = 0; i <= n; ++i) {
    std::vector<Formula> others;
    for (unsigned j = 0; j <= n; ++j)
      if (j != i) others.push_back(vars[j]);
    const Formula rest = fold_disj(others);
    conjuncts.push_back((vars[i] >> rest) >> rest);
  }
  return fold_conj(conjuncts) >> fold_disj(vars);
}

Formula shehtman(Shehtman name, int index) {
  switch (name) {
    case Shehtman::Beta:
    case Shehtman::Gamma: {
      if (index < -1) throw Error("beta/gamma index must be >= -1, got " + std::to_string(index));
      BetaGamma bg(index);
      return name == Shehtman::Beta ? bg.b(index) : bg.g(index);
    }
    case Shehtman::Alpha: {
      if (index < 0) throw Error("alpha index must be >= 0, got " + std::to_string(index));
      return alpha(BetaGamma(index + 2), index);
    }
    default:
      break;
  }
  const BetaGamma bg(4);
  const Formula a0 = alpha(bg, 0), a1 = alpha(bg, 1), a2 = alpha(bg, 2);
  const Formula eta = a0 >> (a1 | a2);
  const Formula epsilon = a0 | a1;
  switch (name) {
    case Shehtman::Eta: return eta;
    case Shehtman::Epsilon: return epsilon;
    case Shehtman::Delta: return eta >> epsilon;
    case Shehtman::Kappa: return a1 >> (a0 | bg.b(2));
    default: break;
  }
  throw Error("unknown Shehtman formula");
}

Shehtman shehtman_from_name(std::string_view name) {
  if (name == "beta") return Shehtman::Beta;
  if (name == "gamma") return Shehtman::Gamma;
  if (name == "alpha") return Shehtman::Alpha;
  if (name == "eta") return Shehtman::Eta;
  if (name == "epsilon") return Shehtman::Epsilon;
  if (name == "delta") return Shehtman::Delta;
  if (name == "kappa") return Shehtman::Kappa;
  throw Error("unknown Shehtman formula name: " + std::string(name));
}

Substitution shehtman_e() {
  const Formula p = Formula::var(0), q = Formula::var(1);
  Substitution e;
  e.set(0, q | (q >> p));
  e.set(1, p | (p >> q));
  return e;
}

ModalFormula godel_translate(const Formula& f) {
  switch (f.op()) {
    case Connective::Bot: return ModalFormula::bot();
    case Connective::Var: return ModalFormula::box(ModalFormula::var(f.index()));
    case Connective::And: return ModalFormula::conj(godel_translate(f.lhs()), godel_translate(f.rhs()));
    case Connective::Or: return ModalFormula::disj(godel_translate(f.lhs()), godel_translate(f.rhs()));
    case Connective::Imp:
      return ModalFormula::box(ModalFormula::imp(godel_translate(f.lhs()), godel_translate(f.rhs())));
    case Connective::Box: break;
  }
  throw Error("godel_translate: unexpected connective");
}

Formula random_formula(std::mt19937_64& rng, unsigned vars, unsigned depth) {
  if (vars == 0) throw Error("random_formula needs at least one variable");
  const auto leaf = [&] {
    const auto pick = rng() % (vars + 1);
    return pick == vars ? Formula::bot() : Formula::var(static_cast<Var>(pick));
  };
  if (depth == 0) return leaf();
  const auto kind = rng() % 6;
  if (kind == 0) return leaf();
  // Operands are drawn in sequence: argument evaluation order is unspecified.
  const Formula a = random_formula(rng, vars, depth - 1);
  if (kind == 3) return Formula::neg(a);
  const Formula b = random_formula(rng, vars, depth - 1);
  if (kind == 1) return a & b;
  if (kind == 2) return a | b;
  return a >> b;
}

}  // namespace kripke
