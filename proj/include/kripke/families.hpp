#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "kripke/formula.hpp"

namespace kripke {

// Gabbay-de Jongh axiom of branching n:
//   AND_{i=0..n} ((p_i -> OR_{j!=i} p_j) -> OR_{j!=i} p_j) -> OR_{i=0..n} p_i
// Conjunctions and disjunctions fold left over increasing indices.
Formula gabbay_de_jongh(unsigned n);

enum class Shehtman { Beta, Gamma, Alpha, Eta, Epsilon, Delta, Kappa };

// The two-variable family over p = p0, q = p1:
//   beta_{-1} = p,  gamma_{-1} = q,  beta_0 = q -> p,  gamma_0 = p -> q,
//   beta_{n+1}  = gamma_n -> beta_n | gamma_{n-1},
//   gamma_{n+1} = beta_n -> gamma_n | beta_{n-1},
//   alpha_n = beta_{n+2} & gamma_{n+2} -> beta_{n+1} | gamma_{n+1},
//   eta = alpha_0 -> alpha_1 | alpha_2,  epsilon = alpha_0 | alpha_1,
//   delta = eta -> epsilon,  kappa = alpha_1 -> alpha_0 | beta_2.
// beta/gamma take index >= -1, alpha index >= 0; the rest ignore it.
Formula shehtman(Shehtman name, int index = 0);

// e(p) = q | (q -> p), e(q) = p | (p -> q).
Substitution shehtman_e();

Shehtman shehtman_from_name(std::string_view name);

// T(p) = []p, T(false) = false, T(a & b) = T(a) & T(b), T(a | b) = T(a) | T(b),
// T(a -> b) = [](T(a) -> T(b)).
ModalFormula godel_translate(const Formula& f);

// Random formula over p0..p{vars-1} of depth at most `depth`, drawn with
// raw engine output (not std distributions) so the sequence is the same on
// every standard library.
Formula random_formula(std::mt19937_64& rng, unsigned vars, unsigned depth);

}  // namespace kripke
