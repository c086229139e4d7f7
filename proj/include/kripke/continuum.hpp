#pragma once

// Finite-scale evidence for the incompleteness construction: the rule
// instances, the axioms on the catalog frames, the independence of the
// family, the general frame on Fine truncations, the comb/chain pattern,
// the corrected valuation and the distinctness certificates.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kripke/catalog.hpp"
#include "kripke/formula.hpp"
#include "kripke/semantics.hpp"

namespace kripke {

// Result of one check. Serialises to
//   {claim, inputs, verdict, witnesses, caveats, bounds, elapsed_ms}.
struct Certificate {
  std::string claim;
  nlohmann::json inputs = nlohmann::json::object();
  bool verdict = false;
  nlohmann::json witnesses = nlohmann::json::object();
  std::vector<std::string> caveats;
  nlohmann::json bounds = nlohmann::json::object();
  std::int64_t elapsed_ms = 0;

  nlohmann::json to_json() const;
  // Everything except the timing; equal across reruns.
  nlohmann::json stable_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

// ---- rule instances ---------------------------------------------------

enum class RuleId { Rule1, Rule2, AcRule };

std::string_view rule_name(RuleId r);
RuleId rule_from_name(std::string_view name);

// psi = alpha_0, varsigma = beta_2 & gamma_2, tau = beta_1 | gamma_1,
// chi = epsilon, e = shehtman_e().
struct InstanceParts {
  Formula psi, varsigma, tau, chi;
  Substitution e;
};
InstanceParts shehtman_parts();

struct RuleInstance {
  RuleId rule;
  std::vector<Formula> premises;
  Formula conclusion;
  Substitution substitution;
};

// rule1:   (psi | (psi -> e chi)) -> chi,  psi <-> (varsigma -> tau),
//          varsigma | tau -> e varsigma & e tau,  chi <-> psi | e tau
// rule2:   (psi | (psi -> e chi)) -> chi,  psi <-> (varsigma -> tau),
//          tau -> e tau,  chi <-> psi | e psi,  e psi -> psi | e tau
// ac_rule: (psi | (psi -> e chi)) -> chi
// Every conclusion is chi.
RuleInstance shehtman_instance(RuleId rule);

// The five table rows: (a) alpha_0 is syntactically varsigma -> tau;
// (b) epsilon against psi | e(psi); (c) delta <-> ((psi | (psi -> e chi)) -> chi),
// both directions; (d) kappa -> (e psi -> psi | e tau); (e) tau -> e tau.
// Rows (c)-(e) are decided by the G4ip prover.
Certificate verify_instantiation();

// ---- catalog frames ---------------------------------------------------

// Every family frame against delta, kappa, bb_2 and epsilon, plus a direct
// scan that no point refutes alpha_0 and alpha_1 together; sanity rows on
// the one-point frame and the 3-fork.
Certificate check_family_axioms(const Catalog& cat = Catalog::shipped());

// reducible(G, F) for G over the family and the Fine truncations and F over
// the family. Expected: witnesses exactly on the family diagonal.
Certificate independence_matrix(const Catalog& cat = Catalog::shipped());

// Plain fine_truncation(k) against delta and kappa; the general frame
// generated by its designated singletons against bb_2 and epsilon.
Certificate general_fine_report(int k, const Catalog& cat = Catalog::shipped(),
                                const SearchOptions& opts = {});

// Evidence that S and S' axiomatise different logics, from the least index
// in their symmetric difference.
Certificate continuum_certificate(const std::set<int>& s, const std::set<int>& s_prime,
                                  const Catalog& cat = Catalog::shipped());

// ---- comb and chain ---------------------------------------------------

// Valuation on p, q pulled back along a substitution:
// V'(v) = truth set of s(v) under V, for every v assigned by V.
// Then the truth set of f under V' equals that of s(f) under V.
Valuation pull_back(const Model& m, const Substitution& s);

// Truth sets of e^0(f), ..., e^n(f) in m, computed by pulling the
// valuation back n times instead of unfolding the formula.
std::vector<PointSet> iterated_truth_sets(const Model& m, const Formula& f, const Substitution& e,
                                          std::size_t n);

struct CombSearch {
  std::optional<Model> model;
  Certificate certificate;
};

// First pair of upsets (p major, ascending) on comb(k) whose root refutes
// epsilon and whose trunk point t_i refutes e^{i-1}(epsilon) for
// i = 1..k-1. (t_k generates a 2-chain, where epsilon and all its
// substitution instances hold.) k >= 3.
CombSearch comb_model(std::size_t k);

// Subframe of fine_ladder(k) generated by x_0, with p = {m1}, q = {m2}: the
// comb appears as a substructure (trunk x_i, tooth d_i).
Model fine_comb_model(std::size_t k);

// Longest chain x_0 < x_1 < ... with x_i refuting e^i(chi), x_0 the least
// refuting point of largest reach (the root whenever it refutes chi).
// Verdict: the chain has depth + 1 points.
Certificate chain_witness(const Model& m, const Formula& chi, const Substitution& e, std::size_t depth);

struct CorrectedValuation {
  Valuation valuation;  // p0, p1, p2
  Certificate certificate;
};

// B(p_i) = intersection over n <= depth, n != i (mod 3), of the truth set
// of e^n(alpha_0). Checks: upsets, pairwise distinct, non-empty, and the
// root of m refutes p0 | p1 | p2.
CorrectedValuation shehtman_valuation(const Model& m, std::size_t depth);

// ---- companion and Gabbay-de Jongh ------------------------------------

// Every poset with <= max_points points, `count` random formulas in two
// variables: intuitionistic validity agrees with modal validity of the
// Goedel translation; every such poset validates Grz.
Certificate companion_check(std::size_t max_points = 4, std::size_t count = 50,
                            std::uint64_t seed = 20021);

// Rooted posets with <= max_points points: branching <= 2 implies bb_2,
// branching <= 1 implies bb_1.
Certificate gabbay_de_jongh_soundness(std::size_t max_points = 6);

// ---- harness ----------------------------------------------------------

// Claim ids in report order.
const std::vector<std::string>& claim_ids();

// Runs one claim with its default inputs, with keys of `overrides` (if
// any) replacing the defaults. Throws Error on an unknown id or an override
// key the claim does not take.
Certificate certify(std::string_view claim, const nlohmann::json& overrides = nlohmann::json::object());

// Default inputs of a claim.
const nlohmann::json& claim_defaults(std::string_view claim);

// All claims, ordered by claim id regardless of completion order.
std::vector<Certificate> certify_all(bool parallel = true);

// Re-executes the operation named by the certificate on its recorded
// inputs.
Certificate replay(const Certificate& c);

// Pass/fail per claim with bounds and caveats.
nlohmann::json report(const std::vector<Certificate>& certs);

// JSON forms used inside certificates.
nlohmann::json frame_json(const Frame& f);
nlohmann::json valuation_json(const Frame& f, const Valuation& v);
nlohmann::json model_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

}  // namespace kripke
