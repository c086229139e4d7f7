#include <string>

#include "internal.hpp"
#include "kripke/error.hpp"
#include "kripke/families.hpp"

namespace kripke {

std::string_view rule_name(RuleId r) {
  switch (r) {
    case RuleId::Rule1:
      return "rule1";
    case RuleId::Rule2:
      return "rule2";
    case RuleId::AcRule:
      return "ac_rule";
  }
  return "?";
}

RuleId rule_from_name(std::string_view name) {
  if (name == "rule1") return RuleId::Rule1;
  if (name == "rule2") return RuleId::Rule2;
  if (name == "ac_rule") return RuleId::AcRule;
  throw Error("unknown rule id: " + std::string(name));
}

InstanceParts shehtman_parts() {
  const Formula varsigma = shehtman(Shehtman::Beta, 2) & shehtman(Shehtman::Gamma, 2);
  const Formula tau = shehtman(Shehtman::Beta, 1) | shehtman(Shehtman::Gamma, 1);
  return {shehtman(Shehtman::Alpha, 0), varsigma, tau, shehtman(Shehtman::Epsilon), shehtman_e()};
}

RuleInstance shehtman_instance(RuleId rule) {
  const auto [psi, varsigma, tau, chi, e] = shehtman_parts();
  const Formula main = (psi | (psi >> e.apply(chi))) >> chi;
  RuleInstance r{rule, {main}, chi, e};
  switch (rule) {
    case RuleId::Rule1:
      r.premises.push_back(Formula::iff(psi, varsigma >> tau));
      r.premises.push_back((varsigma | tau) >> (e.apply(varsigma) & e.apply(tau)));
      r.premises.push_back(Formula::iff(chi, psi | e.apply(tau)));
      break;
    case RuleId::Rule2:
      r.premises.push_back(Formula::iff(psi, varsigma >> tau));
      r.premises.push_back(tau >> e.apply(tau));
      r.premises.push_back(Formula::iff(chi, psi | e.apply(psi)));
      r.premises.push_back(e.apply(psi) >> (psi | e.apply(tau)));
      break;
    case RuleId::AcRule:
      break;
  }
  return r;
}

namespace {

nlohmann::json prove_row(const Formula& f) {
  ProofStats stats;
  const bool ok = decide_int(f, &stats) == IntVerdict::Provable;
  return {{"provable", ok}, {"sequents", stats.sequents}, {"memo_hits", stats.memo_hits}};
}

}  // namespace

Certificate verify_instantiation() {
  const detail::Stopwatch clock;
  const auto [psi, varsigma, tau, chi, e] = shehtman_parts();
  const Formula delta = shehtman(Shehtman::Delta);
  const Formula kappa = shehtman(Shehtman::Kappa);
  const Formula premise = (psi | (psi >> e.apply(chi))) >> chi;

  Certificate c;
  c.claim = "instantiation-table";
  c.inputs = {{"psi", print(psi)},
              {"varsigma", print(varsigma)},
              {"tau", print(tau)},
              {"chi", print(chi)},
              {"e", {{"p0", print(e.image(0))}, {"p1", print(e.image(1))}}}};

  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> failing;

  const bool a = psi == (varsigma >> tau);
  rows.push_back({{"row", "a"}, {"claim", "alpha_0 is varsigma -> tau"}, {"structural", a}, {"holds", a}});
  if (!a) failing.push_back("a");

  // epsilon = alpha_0 | alpha_1 while psi | e(psi) = alpha_0 | e(alpha_0);
  // alpha_1 and e(alpha_0) are different trees, so the row also carries the
  // intuitionistic equivalence that the rule premise chi <-> psi | e psi
  // actually needs.
  const Formula target = psi | e.apply(psi);
  const bool b_struct = chi == target;
  auto b_fwd = prove_row(chi >> target), b_back = prove_row(target >> chi);
  const bool b = b_struct || (b_fwd["provable"].get<bool>() && b_back["provable"].get<bool>());
  rows.push_back({{"row", "b"},
                  {"claim", "epsilon is psi | e(psi)"},
                  {"structural", b_struct},
                  {"int_equivalent", {{"forward", b_fwd}, {"backward", b_back}}},
                  {"holds", b}});
  if (!b) failing.push_back("b");

  auto c_fwd = prove_row(delta >> premise), c_back = prove_row(premise >> delta);
  const bool rc = c_fwd["provable"].get<bool>() && c_back["provable"].get<bool>();
  rows.push_back({{"row", "c"},
                  {"claim", "delta <-> ((psi | (psi -> e chi)) -> chi)"},
                  {"forward", c_fwd},
                  {"backward", c_back},
                  {"holds", rc}});
  if (!rc) failing.push_back("c");

  auto d = prove_row(kappa >> (e.apply(psi) >> (psi | e.apply(tau))));
  rows.push_back({{"row", "d"}, {"claim", "kappa -> (e psi -> psi | e tau)"}, {"proof", d},
                  {"holds", d["provable"]}});
  if (!d["provable"].get<bool>()) failing.push_back("d");

  auto r_e = prove_row(tau >> e.apply(tau));
  rows.push_back({{"row", "e"}, {"claim", "tau -> e tau"}, {"proof", r_e}, {"holds", r_e["provable"]}});
  if (!r_e["provable"].get<bool>()) failing.push_back("e");

  c.verdict = failing.empty();
  c.witnesses = {{"rows", rows}, {"failing_rows", failing}};
  if (!b_struct)
    c.caveats.push_back("row b: epsilon is not syntactically psi | e(psi) (alpha_1 differs from e(alpha_0) as a "
                        "tree); it holds up to intuitionistic equivalence, checked by two G4ip derivations");
  c.bounds = {{"prover", "G4ip"}};
  c.elapsed_ms = clock.ms();
  return c;
}

}  // namespace kripke
