#include <algorithm>

#include "internal.hpp"
#include "kripke/error.hpp"
#include "kripke/families.hpp"
#include "kripke/kernels.hpp"

namespace kripke {

Valuation pull_back(const Model& m, const Substitution& s) {
  Valuation out;
  for (const auto& [v, set] : m.valuation) out[v] = truth_set(m, s.image(v));
  return out;
}

std::vector<PointSet> iterated_truth_sets(const Model& m, const Formula& f, const Substitution& e, std::size_t n) {
  std::vector<PointSet> out;
  out.reserve(n + 1);
  Model cur = m;
  for (std::size_t i = 0;; ++i) {
    out.push_back(truth_set(cur, f));
    if (i == n) break;
    cur.valuation = pull_back(cur, e);
  }
  return out;
}

CombSearch comb_model(std::size_t k) {
  const detail::Stopwatch clock;
  if (k < 3) throw Error("comb_model needs k >= 3");
  const Frame f = comb(k);
  const Formula chi = shehtman(Shehtman::Epsilon);
  const Substitution e = shehtman_e();
  const auto ups = upsets(f);

  CombSearch out;
  Certificate& c = out.certificate;
  c.claim = "comb-model";
  c.inputs = {{"k", k}};

  // Longest prefix t_1..t_j of the pattern any valuation achieves; reported
  // when the search fails. The pull-back is run on compiled code: chi, e(p)
  // and e(q) all range over p, q only.
  const auto prog_chi = kernels::Program::compile(chi);
  const auto prog_p = kernels::Program::compile(e.image(0));
  const auto prog_q = kernels::Program::compile(e.image(1));
  for (const auto* prog : {&prog_chi, &prog_p, &prog_q})
    if (prog->variables() != std::vector<Var>{0, 1}) throw Error("comb_model expects formulas in p, q");
  std::vector<PointSet> regs(std::max({prog_chi.length(), prog_p.length(), prog_q.length()}));

  std::size_t best = 0;
  Valuation best_val;
  std::uint64_t tried = 0;
  for (Upset p : ups) {
    for (Upset q : ups) {
      ++tried;
      PointSet slots[] = {p, q};
      std::size_t j = 0;
      while (j < k - 1 && !contains(prog_chi.eval(f, slots, regs.data()), comb_trunk(j + 1))) {
        ++j;
        const PointSet np = prog_p.eval(f, slots, regs.data());
        slots[1] = prog_q.eval(f, slots, regs.data());
        slots[0] = np;
      }
      if (j > best) {
        best = j;
        best_val = {{0, p}, {1, q}};
      }
      if (j == k - 1) {
        out.model = Model{f, {{0, p}, {1, q}}};
        goto done;
      }
    }
  }
done:
  c.verdict = out.model.has_value();
  c.witnesses = {{"valuations_tried", tried}, {"longest_prefix", best}};
  if (best > 0) c.witnesses["longest_prefix_valuation"] = valuation_json(f, best_val);
  if (out.model) {
    const auto& parts = shehtman_parts();
    const Point u1 = comb_tooth(1);
    c.witnesses["model"] = model_json(*out.model);
    c.witnesses["tooth_u1"] = {{"varsigma", forces(*out.model, u1, parts.varsigma)},
                               {"tau", forces(*out.model, u1, parts.tau)}};
  } else {
    c.caveats.push_back("no pair of upsets on comb(" + std::to_string(k) +
                        ") realises the pattern: the root never refutes epsilon on this frame");
  }
  c.bounds = {{"upsets", ups.size()}, {"trunk_points", k - 1}};
  c.elapsed_ms = clock.ms();
  return out;
}

Model fine_comb_model(std::size_t k) {
  const Frame ladder = fine_ladder(k);
  // x_0 is the least point; the last d has no x below it.
  const Point x0 = static_cast<Point>(ladder.size() - k - 1);
  Generated g = generated_subframe(ladder, x0);
  PointSet p = 0, q = 0;
  for (Point i = 0; i < g.origin.size(); ++i) {
    if (g.origin[i] == kFineP) p |= bit(i);
    if (g.origin[i] == kFineQ) q |= bit(i);
  }
  return {std::move(g.frame), {{0, p}, {1, q}}};
}

Certificate chain_witness(const Model& m, const Formula& chi, const Substitution& e, std::size_t depth) {
  const detail::Stopwatch clock;
  const Frame& f = m.frame;
  // No strictly ascending chain has more points than the height.
  const std::size_t h = height(f);
  const auto truth = iterated_truth_sets(m, chi, e, h - 1);
  std::vector<PointSet> refuting(h);
  for (std::size_t i = 0; i < h; ++i) refuting[i] = f.all() & ~truth[i];

  // reach[i][x]: longest chain x = x_i < x_{i+1} < ... with every x_j refuting e^j(chi).
  std::vector<std::vector<std::size_t>> reach(h, std::vector<std::size_t>(f.size(), 0));
  std::vector<std::vector<Point>> next(h, std::vector<Point>(f.size(), 0));
  for (std::size_t i = h; i-- > 0;) {
    for (Point x : members(refuting[i])) {
      reach[i][x] = 1;
      if (i + 1 == h) continue;
      for (Point y : members(f.strict_up(x) & refuting[i + 1])) {
        if (reach[i + 1][y] + 1 > reach[i][x]) {
          reach[i][x] = reach[i + 1][y] + 1;
          next[i][x] = y;
        }
      }
    }
  }
  std::vector<Point> chain;
  Point start = 0;
  for (Point x : members(refuting[0]))
    if (chain.empty() || reach[0][x] > reach[0][start]) start = x, chain = {x};
  for (std::size_t i = 1; !chain.empty() && i < reach[0][start]; ++i) chain.push_back(next[i - 1][chain.back()]);

  // Independent re-check of the chain.
  bool ascending = true;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    ascending = ascending && !contains(truth[i], chain[i]);
    if (i > 0) ascending = ascending && f.leq(chain[i - 1], chain[i]) && chain[i - 1] != chain[i];
  }

  Certificate c;
  c.claim = "chain-witness";
  c.inputs = {{"model", model_json(m)}, {"chi", print(chi)}, {"e", detail::substitution_json(e)}, {"depth", depth}};
  c.verdict = ascending && chain.size() >= depth + 1;
  nlohmann::json labels = nlohmann::json::array();
  for (Point p : chain) labels.push_back(f.label(p));
  c.witnesses = {{"chain", chain}, {"labels", labels}, {"length", chain.size()}, {"rechecked", ascending}};
  if (const auto r = root(f)) c.witnesses["starts_at_root"] = !chain.empty() && chain.front() == *r;
  c.caveats.push_back(detail::kTruncationCaveat);
  c.bounds = {{"height", h}, {"required_length", depth + 1}};
  c.elapsed_ms = clock.ms();
  return c;
}

CorrectedValuation shehtman_valuation(const Model& m, std::size_t depth) {
  const detail::Stopwatch clock;
  const Frame& f = m.frame;
  const auto truth = iterated_truth_sets(m, shehtman(Shehtman::Alpha, 0), shehtman_e(), depth);
  CorrectedValuation out;
  for (Var i = 0; i < 3; ++i) {
    PointSet b = f.all();
    for (std::size_t n = 0; n <= depth; ++n)
      if (n % 3 != i) b &= truth[n];
    out.valuation[i] = b;
  }
  const auto r = root(f);
  std::vector<std::string> failures;
  for (const auto& [v, b] : out.valuation) {
    const std::string name = print(Formula::var(v));
    if (!f.is_upset(b)) failures.push_back(name + " is not an upset");
    if (b == 0) failures.push_back(name + " is empty");
    if (r && contains(b, *r)) failures.push_back(name + " contains the root");
  }
  for (Var i = 0; i < 3; ++i)
    for (Var j = i + 1; j < 3; ++j)
      if (out.valuation[i] == out.valuation[j])
        failures.push_back(print(Formula::var(i)) + " = " + print(Formula::var(j)));
  if (!r) failures.push_back("frame has no root");

  Certificate& c = out.certificate;
  c.claim = "shehtman-valuation";
  c.inputs = {{"model", model_json(m)}, {"depth", depth}};
  c.verdict = failures.empty();
  c.witnesses = {{"B", valuation_json(f, out.valuation)}, {"failures", failures}};
  if (r) {
    const Formula consequent = Formula::var(0) | Formula::var(1) | Formula::var(2);
    c.witnesses["root"] = f.label(*r);
    c.witnesses["root_refutes_consequent"] = !forces({f, out.valuation}, *r, consequent);
  }
  c.caveats.push_back("the intersection over all n is truncated at n <= depth");
  c.bounds = {{"depth", depth}};
  c.elapsed_ms = clock.ms();
  return out;
}


}  // namespace kripke
