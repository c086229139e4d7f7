#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kripke/catalog.hpp"
#include "kripke/continuum.hpp"
#include "kripke/error.hpp"
#include "kripke/families.hpp"
#include "kripke/morphisms.hpp"
#include "kripke/semantics.hpp"

namespace kwb {

using namespace kripke;
using nlohmann::json;

namespace {

std::size_t parse_count(const std::string& spec, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("bad number in frame spec '" + spec + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string set_text(const Frame& f, PointSet s) {
  std::string out = "{";
  for (Point p : members(s)) out += (out.size() > 1 ? ", " : "") + f.label(p);
  return out + "}";
}

std::string valuation_text(const Frame& f, const Valuation& v) {
  std::string out;
  for (const auto& [var, set] : v) out += (out.empty() ? "" : ", ") + print(Formula::var(var)) + " = " + set_text(f, set);
  return out;
}

// Per-point list of the variables true there, for DOT annotations.
std::map<Point, std::string> annotations(const Frame& f, const Valuation& v) {
  std::map<Point, std::string> out;
  for (Point p = 0; p < f.size(); ++p) {
    std::string s;
    for (const auto& [var, set] : v)
      if (contains(set, p)) s += (s.empty() ? "" : ",") + print(Formula::var(var));
    if (!s.empty()) out[p] = s;
  }
  return out;
}

json frame_summary(const Frame& f) {
  json j = frame_json(f);
  j["height"] = height(f);
  j["width"] = width(f);
  j["branching"] = branching(f);
  const auto r = root(f);
  j["root"] = r ? json(f.label(*r)) : json(nullptr);
  return j;
}

void print_frame(std::ostream& out, const Frame& f) {
  const auto r = root(f);
  out << f.size() << " points, height " << height(f) << ", width " << width(f) << ", branching " << branching(f)
      << (r ? ", root " + f.label(*r) : ", not rooted") << "\n";
  out << "covers:";
  for (auto [a, b] : f.covers()) out << " " << f.label(a) << "<" << f.label(b);
  out << "\n";
}

}  // namespace

Frame frame_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "chain") return Frame::chain(parse_count(spec, rest));
    if (kind == "antichain") return Frame::antichain(parse_count(spec, rest));
    if (kind == "fork") return Frame::fork(parse_count(spec, rest));
    if (kind == "comb") return comb(parse_count(spec, rest));
    if (kind == "fine") return fine_ladder(parse_count(spec, rest));
    if (kind == "covers") {
      const auto colon2 = rest.find(':');
      const std::size_t n = parse_count(spec, rest.substr(0, colon2));
      std::vector<std::pair<Point, Point>> covers;
      if (colon2 != std::string::npos) {
        std::stringstream ss(rest.substr(colon2 + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto dash = item.find('-');
          if (dash == std::string::npos) throw Error("bad cover '" + item + "' in frame spec");
          covers.emplace_back(static_cast<Point>(parse_count(spec, item.substr(0, dash))),
                              static_cast<Point>(parse_count(spec, item.substr(dash + 1))));
        }
      }
      return Frame::from_covers(n, covers);
    }
  }
  if (const auto* e = Catalog::shipped().find(spec)) return e->frame;
  if (spec.ends_with(".dot")) return frame_from_dot(read_file(spec));
  if (spec.ends_with(".json")) {
    const json j = json::parse(read_file(spec));
    return model_from_json({{"frame", j.contains("frame") ? j.at("frame") : j}, {"valuation", json::object()}})
        .frame;
  }
  throw CatalogError("unknown frame '" + spec + "' (not a builtin spec, catalog name or file)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kwb: Kripke semantics workbench for intermediate logics"};
  app.require_subcommand(1);
  bool as_json = false, as_dot = false, serial = false, stable = false, modal = false;
  std::size_t max_points = kMaxCountermodelPoints - 1;
  std::uint64_t budget = kDefaultValuationBudget;
  std::optional<std::size_t> depth;
  std::string formula_text, frame_spec, target_spec, claim, action = "list", name, file;

  auto add_json = [&](CLI::App* c) { c->add_flag("--json", as_json, "Emit JSON"); };
  auto add_dot = [&](CLI::App* c) { c->add_flag("--dot", as_dot, "Emit DOT for the resulting frame"); };

  auto* parse_cmd = app.add_subcommand("parse", "Parse and normalise a formula");
  parse_cmd->add_option("formula", formula_text)->required();
  parse_cmd->add_flag("--modal", modal, "Modal syntax ([] allowed)");
  add_json(parse_cmd);

  auto* check_cmd = app.add_subcommand("check", "Validity of a formula on a frame");
  check_cmd->add_option("frame", frame_spec)->required();
  check_cmd->add_option("formula", formula_text)->required();
  check_cmd->add_flag("--modal", modal, "Modal formula, valuations over arbitrary subsets");
  check_cmd->add_option("--valuation-budget", budget, "Largest valuation space searched");
  check_cmd->add_flag("--serial", serial, "Use the serial kernel");
  add_json(check_cmd);
  add_dot(check_cmd);

  auto* prove_cmd = app.add_subcommand("prove", "Decide intuitionistic provability (G4ip)");
  prove_cmd->add_option("formula", formula_text)->required();
  add_json(prove_cmd);

  auto* counter_cmd = app.add_subcommand("counter", "Smallest rooted countermodel");
  counter_cmd->add_option("formula", formula_text)->required();
  counter_cmd->add_option("--max,--max-points", max_points, "Largest poset size tried");
  counter_cmd->add_option("--valuation-budget", budget, "Largest valuation space per poset");
  add_json(counter_cmd);
  add_dot(counter_cmd);

  auto* jankov_cmd = app.add_subcommand("jankov", "Jankov formula of a rooted frame");
  jankov_cmd->add_option("frame", frame_spec)->required();
  add_json(jankov_cmd);

  auto* reduce_cmd = app.add_subcommand("reduce", "Search a p-morphism from a generated subframe of G onto F");
  reduce_cmd->add_option("G", frame_spec)->required();
  reduce_cmd->add_option("F", target_spec)->required();
  add_json(reduce_cmd);
  add_dot(reduce_cmd);

  auto* frame_cmd = app.add_subcommand("frame", "Construct and describe a frame");
  frame_cmd->add_option("spec", frame_spec)->required();
  add_json(frame_cmd);
  add_dot(frame_cmd);

  auto* catalog_cmd = app.add_subcommand("catalog", "List, validate or show the frame catalog");
  catalog_cmd->add_option("action", action, "list | validate | show")->check(CLI::IsMember({"list", "validate", "show"}));
  catalog_cmd->add_option("name", name, "Entry for show");
  catalog_cmd->add_option("--file", file, "Catalog file instead of the shipped one");
  add_json(catalog_cmd);
  add_dot(catalog_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "Run one claim or all of them");
  certify_cmd->add_option("claim", claim, "Claim id or 'all'")->required();
  certify_cmd->add_option("--depth", depth, "Depth for the chain and valuation claims");
  certify_cmd->add_option("--max-points", max_points, "Poset bound for the companion and bb_n claims");
  certify_cmd->add_flag("--serial", serial, "Run claims one after another");
  certify_cmd->add_flag("--stable", stable, "Omit timings from JSON");
  add_json(certify_cmd);

  auto* report_cmd = app.add_subcommand("report", "Pass/fail summary per claim");
  report_cmd->add_option("file", file, "Certificates written by certify --json (default: run all)");
  report_cmd->add_flag("--serial", serial, "Run claims one after another");
  add_json(report_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const SearchOptions opts{budget, !serial};

    if (*parse_cmd) {
      json j;
      if (modal) {
        const ModalFormula f = parse_modal(formula_text);
        j = {{"formula", print(f)}, {"size", f.size()}, {"dag_size", f.dag_size()}, {"depth", f.depth()},
             {"variables", f.variables()}};
      } else {
        const Formula f = parse(formula_text);
        j = {{"formula", print(f)}, {"size", f.size()}, {"dag_size", f.dag_size()}, {"depth", f.depth()},
             {"variables", f.variables()}};
      }
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << j["formula"].get<std::string>() << "\n"
            << "size " << j["size"] << ", depth " << j["depth"] << ", " << j["variables"].size() << " variable(s)\n";
      }
      return kOk;
    }

    if (*check_cmd) {
      const Frame f = frame_from_spec(frame_spec);
      const ValidityResult r = modal ? modal_valid(f, parse_modal(formula_text), opts)
                                     : valid_on_frame(f, parse(formula_text), opts);
      if (as_dot) {
        out << dot_export(f, r.refutation ? annotations(f, r.refutation->valuation) : std::map<Point, std::string>{});
      } else if (as_json) {
        json j{{"valid", r.valid}, {"valuations", r.space}};
        if (r.refutation) {
          j["point"] = f.label(r.refutation->point);
          j["valuation"] = valuation_json(f, r.refutation->valuation);
        }
        out << j.dump(2) << "\n";
      } else if (r.valid) {
        out << "valid (" << r.space << " valuations)\n";
      } else {
        out << "refuted at " << f.label(r.refutation->point) << " under "
            << valuation_text(f, r.refutation->valuation) << "\n";
      }
      return r.valid ? kOk : kFalse;
    }

    if (*prove_cmd) {
      const Formula f = parse(formula_text);
      ProofStats stats;
      const bool ok = decide_int(f, &stats) == IntVerdict::Provable;
      if (as_json) {
        out << json{{"formula", print(f)}, {"verdict", ok ? "Provable" : "Refutable"}, {"sequents", stats.sequents},
                    {"memo_hits", stats.memo_hits}}
                   .dump(2)
            << "\n";
      } else {
        out << (ok ? "Provable" : "Refutable") << "\n";
      }
      return ok ? kOk : kFalse;
    }

    if (*counter_cmd) {
      const Formula f = parse(formula_text);
      const auto cm = countermodel_search(f, max_points, opts);
      if (!cm) {
        if (as_json)
          out << json{{"countermodel", nullptr}, {"max_points", max_points}}.dump(2) << "\n";
        else
          out << "no countermodel with at most " << max_points << " points\n";
        return kFalse;
      }
      const Frame& fr = cm->model.frame;
      if (as_dot) {
        out << dot_export(fr, annotations(fr, cm->model.valuation));
      } else if (as_json) {
        json j = model_json(cm->model);
        j["root"] = cm->point;
        out << json{{"countermodel", j}}.dump(2) << "\n";
      } else {
        out << "countermodel: ";
        print_frame(out, fr);
        out << "valuation: " << valuation_text(fr, cm->model.valuation) << "\n";
      }
      return kOk;
    }

    if (*jankov_cmd) {
      const Frame f = frame_from_spec(frame_spec);
      const JankovFormula jf = jankov_formula(f);
      if (as_json) {
        json ups = json::array();
        for (Upset u : jf.upsets) ups.push_back(members(u));
        out << json{{"formula", print(jf.formula)}, {"upsets", ups}, {"omega", jf.omega},
                    {"dag_size", jf.formula.dag_size()}}
                   .dump(2)
            << "\n";
      } else {
        out << print(jf.formula) << "\n";
      }
      return kOk;
    }

    if (*reduce_cmd) {
      const Frame g = frame_from_spec(frame_spec), f = frame_from_spec(target_spec);
      const auto r = reducible(g, f, {!serial});
      if (as_dot) {
        std::map<Point, std::string> notes;
        if (r)
          for (std::size_t i = 0; i < r->domain.size(); ++i) notes[r->domain[i]] = "-> " + f.label(r->image[i]);
        out << dot_export(g, notes);
      } else if (as_json) {
        json j = nullptr;
        if (r) j = {{"start", r->start}, {"domain", r->domain}, {"image", r->image}};
        out << json{{"reduction", j}}.dump(2) << "\n";
      } else if (r) {
        out << "reduction from the subframe generated by " << g.label(r->start) << ":";
        for (std::size_t i = 0; i < r->domain.size(); ++i)
          out << " " << g.label(r->domain[i]) << "->" << f.label(r->image[i]);
        out << "\n";
      } else {
        out << "no generated subframe maps onto the target\n";
      }
      return r ? kOk : kFalse;
    }

    if (*frame_cmd) {
      const Frame f = frame_from_spec(frame_spec);
      if (as_dot)
        out << dot_export(f);
      else if (as_json)
        out << frame_summary(f).dump(2) << "\n";
      else
        print_frame(out, f);
      return kOk;
    }

    if (*catalog_cmd) {
      const Catalog owned = file.empty() ? Catalog{} : Catalog::load(file);
      const Catalog& cat = file.empty() ? Catalog::shipped() : owned;
      if (action == "show") {
        if (name.empty()) throw Error("catalog show needs an entry name");
        const auto& e = cat.get(name);
        if (as_dot) {
          out << dot_export(e.frame);
        } else if (as_json) {
          json j = frame_summary(e.frame);
          j["name"] = e.name;
          j["meta"] = e.meta;
          out << j.dump(2) << "\n";
        } else {
          out << e.name << (e.note.empty() ? "" : " - " + e.note) << "\n";
          print_frame(out, e.frame);
        }
        return kOk;
      }
      if (action == "validate") {
        std::vector<std::string> problems;
        for (int n : cat.indices("F"))
          if (!root(cat.member("F", n).frame)) problems.push_back(cat.member("F", n).name + " is not rooted");
        for (int k : cat.indices("fine"))
          if (cat.member("fine", k).designated.size() != 2)
            problems.push_back(cat.member("fine", k).name + " needs two designated points");
        if (as_json) {
          out << json{{"entries", cat.entries().size()}, {"problems", problems}}.dump(2) << "\n";
        } else {
          out << cat.entries().size() << " entries, " << problems.size() << " problem(s)\n";
          for (const auto& p : problems) out << "  " << p << "\n";
        }
        return problems.empty() ? kOk : kFalse;
      }
      if (as_json) {
        out << cat.to_json().dump(2) << "\n";
      } else {
        for (const auto& e : cat.entries())
          out << e.name << "\t" << (e.family.empty() ? "-" : e.family) << "\t" << e.frame.size() << " points\n";
      }
      return kOk;
    }

    if (*certify_cmd) {
      std::vector<Certificate> certs;
      auto overrides = [&](const std::string& id) {
        json o = json::object();
        const json& d = claim_defaults(id);
        if (depth && d.contains("depth")) o["depth"] = *depth;
        if (certify_cmd->count("--max-points") && d.contains("max_points")) o["max_points"] = max_points;
        return o;
      };
      if (claim == "all") {
        if (depth || certify_cmd->count("--max-points")) {
          for (const auto& id : claim_ids()) certs.push_back(certify(id, overrides(id)));
        } else {
          certs = certify_all(!serial);
        }
      } else {
        certs.push_back(certify(claim, overrides(claim)));
      }
      const bool ok = std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.verdict; });
      auto dump = [&](const Certificate& c) { return stable ? c.stable_json() : c.to_json(); };
      if (as_json) {
        if (claim == "all") {
          json all = json::array();
          for (const auto& c : certs) all.push_back(dump(c));
          json rep = report(certs);
          if (stable) {
            rep.erase("elapsed_ms");
            for (auto& row : rep["claims"]) row.erase("elapsed_ms");
          }
          out << json{{"summary", rep}, {"certificates", all}}.dump(2) << "\n";
        } else {
          out << dump(certs.front()).dump(2) << "\n";
        }
      } else {
        for (const auto& c : certs) {
          out << (c.verdict ? "PASS " : "FAIL ") << c.claim << " (" << c.elapsed_ms << " ms)\n";
          for (const auto& cv : c.caveats) out << "  caveat: " << cv << "\n";
        }
      }
      return ok ? kOk : kFalse;
    }

    if (*report_cmd) {
      std::vector<Certificate> certs;
      if (file.empty()) {
        certs = certify_all(!serial);
      } else {
        const json j = json::parse(read_file(file));
        const json& list = j.is_array() ? j : j.at("certificates");
        for (const auto& c : list) certs.push_back(Certificate::from_json(c));
      }
      const json rep = report(certs);
      if (as_json) {
        out << rep.dump(2) << "\n";
      } else {
        for (const auto& row : rep["claims"]) {
          out << (row["verdict"] == "pass" ? "pass  " : "FAIL  ") << row["claim"].get<std::string>();
          if (!row["bounds"].empty()) out << "  bounds " << row["bounds"].dump();
          out << "\n";
          for (const auto& cv : row["caveats"]) out << "      caveat: " << cv.get<std::string>() << "\n";
        }
        out << rep["passed"] << " passed, " << rep["failed"] << " failed\n";
      }
      return rep["all_pass"].get<bool>() ? kOk : kFalse;
    }
  } catch (const SyntaxError& e) {
    err << "kwb: syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "kwb: resource limit: " << e.what() << " (needed " << e.required << ", limit " << e.limit << ")\n";
    return kUsage;
  } catch (const Error& e) {
    err << "kwb: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "kwb: bad JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace kwb
