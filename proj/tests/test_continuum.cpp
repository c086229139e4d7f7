#include <doctest.h>

#include <random>
#include <unordered_map>

#include "kripke/catalog.hpp"
#include "kripke/continuum.hpp"
#include "kripke/error.hpp"
#include "kripke/families.hpp"
#include "oracles.hpp"

using namespace kripke;

namespace {

// Truth set by recursion over the formula DAG, memoised per node; follows
// the forcing clauses directly.
PointSet dag_truth(const Frame& f, const Valuation& v, const Formula& phi,
                   std::unordered_map<const void*, PointSet>& memo) {
  if (auto it = memo.find(phi.node()); it != memo.end()) return it->second;
  PointSet out = 0;
  switch (phi.op()) {
    case Connective::Bot:
      break;
    case Connective::Var:
      out = v.at(phi.index());
      break;
    case Connective::And:
      out = dag_truth(f, v, phi.lhs(), memo) & dag_truth(f, v, phi.rhs(), memo);
      break;
    case Connective::Or:
      out = dag_truth(f, v, phi.lhs(), memo) | dag_truth(f, v, phi.rhs(), memo);
      break;
    case Connective::Imp: {
      const PointSet a = dag_truth(f, v, phi.lhs(), memo), b = dag_truth(f, v, phi.rhs(), memo);
      for (Point w = 0; w < f.size(); ++w) {
        bool ok = true;
        for (Point u = 0; u < f.size() && ok; ++u) ok = !oracle::le(f, w, u) || !contains(a, u) || contains(b, u);
        if (ok) out |= bit(w);
      }
      break;
    }
    case Connective::Box:
      throw std::logic_error("box");
  }
  return memo[phi.node()] = out;
}

PointSet dag_truth(const Frame& f, const Valuation& v, const Formula& phi) {
  std::unordered_map<const void*, PointSet> memo;
  return dag_truth(f, v, phi, memo);
}

Formula epsilon() { return shehtman(Shehtman::Epsilon); }

}  // namespace

TEST_CASE("rule instances") {
  const auto [psi, varsigma, tau, chi, e] = shehtman_parts();
  CHECK(psi == shehtman(Shehtman::Alpha, 0));
  CHECK(chi == epsilon());
  const RuleInstance r2 = shehtman_instance(RuleId::Rule2);
  const auto has = [](const RuleInstance& r, const Formula& f) {
    return std::find(r.premises.begin(), r.premises.end(), f) != r.premises.end();
  };
  CHECK(has(r2, tau >> e.apply(tau)));
  CHECK(has(r2, Formula::iff(chi, psi | e.apply(psi))));
  CHECK(has(r2, e.apply(psi) >> (psi | e.apply(tau))));
  const RuleInstance r1 = shehtman_instance(RuleId::Rule1);
  REQUIRE(r1.premises.size() == 4);
  CHECK(r1.premises[2] == ((varsigma | tau) >> (e.apply(varsigma) & e.apply(tau))));
  CHECK(shehtman_instance(RuleId::AcRule).premises.size() == 1);
  for (RuleId r : {RuleId::Rule1, RuleId::Rule2, RuleId::AcRule}) {
    CHECK(shehtman_instance(r).conclusion == chi);
    CHECK(rule_from_name(rule_name(r)) == r);
  }
  CHECK_THROWS_AS(rule_from_name("rule3"), Error);
}

TEST_CASE("instantiation table") {
  const Certificate c = verify_instantiation();
  CHECK(c.verdict);
  const auto& rows = c.witnesses.at("rows");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].at("structural") == true);
  // Row b holds only up to Int-equivalence; the certificate says so.
  CHECK(rows[1].at("structural") == false);
  CHECK(rows[1].at("int_equivalent").at("forward").at("provable") == true);
  CHECK(rows[1].at("int_equivalent").at("backward").at("provable") == true);
  CHECK(rows[2].at("forward").at("provable") == true);
  CHECK(rows[2].at("backward").at("provable") == true);
  CHECK(rows[3].at("proof").at("provable") == true);
  CHECK(rows[4].at("proof").at("provable") == true);
  CHECK(c.caveats.size() == 1);
}

TEST_CASE("pull-back computes substitution instances") {
  std::mt19937_64 rng(31);
  std::vector<Frame> frames;
  for (std::size_t n = 1; n <= 4; ++n)
    for (Frame& f : enumerate_posets(n, false)) frames.push_back(std::move(f));
  const Substitution e = shehtman_e();
  for (int i = 0; i < 120; ++i) {
    const Frame& f = frames[rng() % frames.size()];
    const auto ups = upsets(f);
    const Model m{f, {{0, ups[rng() % ups.size()]}, {1, ups[rng() % ups.size()]}}};
    const Formula phi = random_formula(rng, 2, 3);
    const auto sets = iterated_truth_sets(m, phi, e, 4);
    REQUIRE(sets.size() == 5);
    for (unsigned n = 0; n <= 4; ++n) CHECK(sets[n] == dag_truth(f, m.valuation, iterate(e, n, phi)));
    // An arbitrary substitution, one step.
    const Substitution s({{0, random_formula(rng, 2, 2)}, {1, random_formula(rng, 2, 2)}});
    const Model pulled{f, pull_back(m, s)};
    CHECK(truth_set(pulled, phi) == dag_truth(f, m.valuation, s.apply(phi)));
  }
}

TEST_CASE("comb search matches a direct search") {
  const Formula chi = epsilon();
  const Substitution e = shehtman_e();
  for (std::size_t k = 3; k <= 5; ++k) {
    const Frame f = comb(k);
    std::size_t best = 0;
    bool found = false;
    for (Upset p : upsets(f)) {
      for (Upset q : upsets(f)) {
        const Model m{f, {{0, p}, {1, q}}};
        std::size_t j = 0;
        while (j < k - 1 && !contains(dag_truth(f, m.valuation, iterate(e, j, chi)), comb_trunk(j + 1))) ++j;
        best = std::max(best, j);
        found = found || j == k - 1;
      }
    }
    const CombSearch s = comb_model(k);
    CHECK(s.model.has_value() == found);
    CHECK(s.certificate.verdict == found);
    CHECK(s.certificate.witnesses.at("longest_prefix") == best);
  }
  CHECK_THROWS_AS(comb_model(2), Error);
}

TEST_CASE("epsilon holds on every finite comb, so the comb pattern never starts") {
  for (std::size_t k = 1; k <= 6; ++k) CHECK(valid_on_frame(comb(k), epsilon()).valid);
}

TEST_CASE("Fine-ladder analogue of the comb") {
  const Model m = fine_comb_model(9);
  REQUIRE(root(m.frame));
  CHECK(m.frame.label(*root(m.frame)) == "x0");
  CHECK(!forces(m, *root(m.frame), epsilon()));

  const Certificate zero = chain_witness(m, epsilon(), shehtman_e(), 0);
  CHECK(zero.verdict);
  CHECK(zero.witnesses.at("starts_at_root") == true);

  const Certificate c = chain_witness(m, epsilon(), shehtman_e(), 7);
  CHECK(c.verdict);
  const auto chain = c.witnesses.at("chain").get<std::vector<Point>>();
  CHECK(chain.size() >= 8);
  CHECK(chain.front() == *root(m.frame));
  // Independent re-check: strictly ascending, x_i refutes e^i(epsilon).
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Formula fi = iterate(shehtman_e(), static_cast<unsigned>(i), epsilon(), UINT64_MAX);
    CHECK(!contains(dag_truth(m.frame, m.valuation, fi), chain[i]));
    if (i > 0) CHECK((chain[i - 1] != chain[i] && m.frame.leq(chain[i - 1], chain[i])));
  }
  CHECK(!chain_witness(m, epsilon(), shehtman_e(), 40).verdict);
}

TEST_CASE("corrected valuation") {
  const Model m = fine_comb_model(9);
  const CorrectedValuation cv = shehtman_valuation(m, 9);
  CHECK(cv.certificate.verdict);
  const Point r = *root(m.frame);
  std::vector<PointSet> bs;
  for (Var i = 0; i < 3; ++i) {
    const PointSet b = cv.valuation.at(i);
    CHECK(oracle::is_upset(m.frame, b));
    CHECK(b != 0);
    CHECK(!contains(b, r));
    bs.push_back(b);
  }
  CHECK(bs[0] != bs[1]);
  CHECK(bs[1] != bs[2]);
  CHECK(bs[0] != bs[2]);
  // Independent recomputation of the finite intersections.
  const Formula a0 = shehtman(Shehtman::Alpha, 0);
  for (Var i = 0; i < 3; ++i) {
    PointSet b = m.frame.all();
    for (unsigned n = 0; n <= 9; ++n)
      if (n % 3 != i) b &= dag_truth(m.frame, m.valuation, iterate(shehtman_e(), n, a0, UINT64_MAX));
    CHECK(b == cv.valuation.at(i));
  }
  // On a one-point model everything collapses: failed certificate, not an exception.
  const Model point{Frame::chain(1), {{0, 1}, {1, 1}}};
  CHECK(!shehtman_valuation(point, 9).certificate.verdict);
}

TEST_CASE("family axioms and independence") {
  const Certificate a = check_family_axioms();
  CHECK(a.verdict);
  CHECK(a.witnesses.at("frames").size() == 4);
  const Certificate m = independence_matrix();
  CHECK(m.verdict);
  CHECK(m.witnesses.at("violations").empty());
}

TEST_CASE("general frame on the Fine truncations") {
  for (int k : Catalog::shipped().indices("fine")) {
    const Certificate c = general_fine_report(k);
    const auto& w = c.witnesses;
    CHECK(w.at("general_epsilon").at("valid") == false);
    CHECK(w.at("general_bb_2").at("valid") == true);
    CHECK(w.at("plain_kappa").at("valid") == true);
    CHECK(w.at("proper_subfamily") == true);
    // Plain delta fails on any finite truncation that refutes epsilon.
    CHECK(w.at("plain_delta").at("valid") == false);
    CHECK(!c.verdict);
    CHECK(std::find(c.caveats.begin(), c.caveats.end(),
                    std::string("finite truncation: the original claim concerns an infinite frame; only the "
                                "stated bounds are checked")) != c.caveats.end());
  }
}

TEST_CASE("continuum certificates") {
  const Certificate c0 = continuum_certificate({0}, {});
  CHECK(c0.verdict);
  CHECK(c0.witnesses.at("index") == 0);
  CHECK(c0.witnesses.at("own_jankov_refuted") == true);
  CHECK(c0.witnesses.at("delta") == true);
  CHECK(c0.witnesses.at("kappa") == true);
  CHECK(c0.witnesses.at("bb_2") == true);
  const Certificate c1 = continuum_certificate({0, 1}, {0, 2});
  CHECK(c1.witnesses.at("index") == 1);
  CHECK(c1.witnesses.at("other_jankov").size() == 2);
  CHECK_THROWS_AS(continuum_certificate({1}, {1}), Error);
}

TEST_CASE("companion and Gabbay-de Jongh sweeps") {
  const Certificate c = companion_check(3, 30, 5);
  CHECK(c.verdict);
  CHECK(c.witnesses.at("posets") == 1 + 2 + 5);
  const Certificate g = gabbay_de_jongh_soundness(5);
  CHECK(g.verdict);
  CHECK(g.witnesses.at("rooted_posets") == 1 + 1 + 2 + 5 + 16);
  CHECK(g.witnesses.at("branching_gt_2_refuting_bb_2") == g.witnesses.at("branching_gt_2"));
}

TEST_CASE("certificate serialisation") {
  const Certificate c = continuum_certificate({2}, {3});
  const Certificate back = Certificate::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(!c.stable_json().contains("elapsed_ms"));
  CHECK_THROWS_AS(Certificate::from_json(nlohmann::json{{"claim", 1}}), Error);
  const Model m = fine_comb_model(3);
  const Model again = model_from_json(model_json(m));
  CHECK(again.frame == m.frame);
  CHECK(again.valuation == m.valuation);
  CHECK(again.frame.labels() == m.frame.labels());
}

TEST_CASE("certificates replay bit for bit") {
  const Model m = fine_comb_model(5);
  const std::vector<Certificate> certs{
      chain_witness(m, epsilon(), shehtman_e(), 4), shehtman_valuation(m, 6).certificate, comb_model(4).certificate,
      continuum_certificate({0, 3}, {1}), general_fine_report(2), companion_check(2, 10, 1)};
  for (const auto& c : certs) CHECK_MESSAGE(replay(c).stable_json() == c.stable_json(), c.claim);
  Certificate bogus;
  bogus.claim = "no-such-claim";
  CHECK_THROWS_AS(replay(bogus), Error);
}

TEST_CASE("harness") {
  const auto& ids = claim_ids();
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(ids.size() == 9);
  CHECK_THROWS_AS(certify("nope"), Error);
  CHECK_THROWS_AS(certify("companion", {{"bogus", 1}}), Error);
  const Certificate small = certify("companion", {{"max_points", 2}});
  CHECK(small.inputs.at("max_points") == 2);
  CHECK(small.verdict);
  CHECK(replay(small).stable_json() == small.stable_json());

  const auto par = certify_all(true);
  const auto ser = certify_all(false);
  REQUIRE(par.size() == ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CHECK(par[i].claim == ids[i]);
    CHECK(par[i].stable_json() == ser[i].stable_json());
  }
  const auto rep = report(par);
  CHECK(rep.at("claims").size() == ids.size());
  CHECK(rep.at("passed").get<std::size_t>() + rep.at("failed").get<std::size_t>() == ids.size());
  // Only the Fine-truncation claim is expected to fail; see the caveat it carries.
  for (const auto& c : par) CHECK_MESSAGE(c.verdict == (c.claim != "general-fine-frame"), c.claim);
}
