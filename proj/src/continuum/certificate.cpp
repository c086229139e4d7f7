#include "kripke/continuum.hpp"

#include "internal.hpp"
#include "kripke/error.hpp"

namespace kripke {

nlohmann::json Certificate::stable_json() const {
  return {{"claim", claim},   {"inputs", inputs}, {"verdict", verdict},
          {"witnesses", witnesses}, {"caveats", caveats}, {"bounds", bounds}};
}

nlohmann::json Certificate::to_json() const {
  auto j = stable_json();
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  try {
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.inputs = j.value("inputs", nlohmann::json::object());
    c.verdict = j.at("verdict").get<bool>();
    c.witnesses = j.value("witnesses", nlohmann::json::object());
    c.caveats = j.value("caveats", std::vector<std::string>{});
    c.bounds = j.value("bounds", nlohmann::json::object());
    c.elapsed_ms = j.value("elapsed_ms", std::int64_t{0});
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed certificate: ") + ex.what());
  }
}

nlohmann::json frame_json(const Frame& f) {
  nlohmann::json covers = nlohmann::json::array();
  for (auto [a, b] : f.covers()) covers.push_back({a, b});
  nlohmann::json labels = nlohmann::json::array();
  for (Point p = 0; p < f.size(); ++p) labels.push_back(f.label(p));
  return {{"points", f.size()}, {"labels", labels}, {"covers", covers}};
}

nlohmann::json valuation_json(const Frame& f, const Valuation& v) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [var, set] : v) {
    nlohmann::json pts = nlohmann::json::array();
    for (Point p : members(set)) pts.push_back(f.label(p));
    out[print(Formula::var(var))] = pts;
  }
  return out;
}

nlohmann::json model_json(const Model& m) {
  nlohmann::json val = nlohmann::json::object();
  for (const auto& [var, set] : m.valuation) val[print(Formula::var(var))] = members(set);
  return {{"frame", frame_json(m.frame)}, {"valuation", val}};
}

Model model_from_json(const nlohmann::json& j) {
  try {
    const auto& fj = j.at("frame");
    std::vector<std::pair<Point, Point>> covers;
    for (const auto& c : fj.at("covers")) covers.emplace_back(c.at(0).get<Point>(), c.at(1).get<Point>());
    Frame f = Frame::from_covers(fj.at("points").get<std::size_t>(), covers,
                                 fj.value("labels", std::vector<std::string>{}));
    Valuation v;
    for (const auto& [name, pts] : j.at("valuation").items()) {
      const Formula x = parse(name);
      if (!x.is(Connective::Var)) throw Error("valuation key is not a variable: " + name);
      v[x.index()] = from_members(pts.get<std::vector<Point>>());
    }
    return {std::move(f), std::move(v)};
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed model: ") + ex.what());
  }
}

namespace detail {

nlohmann::json substitution_json(const Substitution& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, img] : s.images()) j[print(Formula::var(v))] = print(img);
  return j;
}

Substitution substitution_from_json(const nlohmann::json& j) {
  Substitution s;
  for (const auto& [name, img] : j.items()) {
    const Formula x = parse(name);
    if (!x.is(Connective::Var)) throw Error("substitution key is not a variable: " + name);
    s.set(x.index(), parse(img.get<std::string>()));
  }
  return s;
}

}  // namespace detail

}  // namespace kripke
