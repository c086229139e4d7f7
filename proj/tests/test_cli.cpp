#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kwb::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("prove") {
  auto r = call({"prove", "p -> p"});
  CHECK(r.code == 0);
  CHECK(r.out == "Provable\n");
  r = call({"prove", "p | ~p"});
  CHECK(r.code == 1);
  CHECK(r.out == "Refutable\n");
  r = call({"prove", "p ->"});
  CHECK(r.code == 2);
  CHECK(r.err.find("syntax error") != std::string::npos);
  r = call({"prove", "(p -> q) -> ~q -> ~p", "--json"});
  CHECK(nlohmann::json::parse(r.out).at("verdict") == "Provable");
}

TEST_CASE("counter") {
  auto r = call({"counter", "p | ~p", "--max", "3", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out).at("countermodel");
  CHECK(j.at("frame").at("points") == 2);
  CHECK(j.at("frame").at("covers").size() == 1);
  CHECK(call({"counter", "p -> p", "--max-points", "3"}).code == 1);
  CHECK(call({"counter", "p", "--max", "9"}).code == 2);
  r = call({"counter", "p | ~p", "--dot"});
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("check") {
  CHECK(call({"check", "chain:2", "p | ~p"}).code == 1);
  CHECK(call({"check", "fork:2", "p -> p"}).code == 0);
  CHECK(call({"check", "comb:3", "[]p -> p", "--modal"}).code == 0);
  auto r = call({"check", "chain:2", "p | ~p", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("valid") == false);
  CHECK(j.at("point") == "0");
  CHECK(call({"check", "nowhere", "p"}).code == 2);
  CHECK(call({"check", "antichain:12", "((p -> q | r) -> q | r) -> p | q | r", "--valuation-budget", "10"}).code == 2);
  CHECK(call({"check", "F0", "((p -> q | r) -> q | r) & ((q -> p | r) -> p | r) & ((r -> p | q) -> p | q) -> p | q | r"})
            .code == 0);
}

TEST_CASE("parse") {
  auto r = call({"parse", "p -> q -> p"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p0 -> p1 -> p0\n", 0) == 0);
  r = call({"parse", "[]p -> p", "--modal", "--json"});
  CHECK(nlohmann::json::parse(r.out).at("formula") == "[]p0 -> p0");
  CHECK(call({"parse", "[]p"}).code == 2);
}

TEST_CASE("frame") {
  auto r = call({"frame", "comb:2", "--dot"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "->") == 3);
  r = call({"frame", "covers:3:0-1,0-2", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("points") == 3);
  CHECK(j.at("branching") == 2);
  CHECK(call({"frame", "covers:2:0-1,1-0"}).code == 2);
  CHECK(call({"frame", "chain:x"}).code == 2);
  CHECK(call({"frame", "fine:2"}).code == 0);

  const auto path = std::filesystem::temp_directory_path() / "kwb_test_frame.dot";
  std::ofstream(path) << call({"frame", "F1", "--dot"}).out;
  r = call({"frame", path.string(), "--json"});
  CHECK(nlohmann::json::parse(r.out).at("points") == 7);
  std::filesystem::remove(path);
}

TEST_CASE("reduce and jankov") {
  CHECK(call({"reduce", "F0", "F0"}).code == 0);
  CHECK(call({"reduce", "F0", "F1"}).code == 1);
  auto r = call({"reduce", "comb:2", "chain:2", "--json"});
  CHECK(r.code == 0);
  CHECK(!nlohmann::json::parse(r.out).at("reduction").is_null());
  CHECK(call({"reduce", "chain:2", "antichain:2"}).code == 2);
  r = call({"jankov", "chain:1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-> p0") != std::string::npos);
}

TEST_CASE("catalog") {
  auto r = call({"catalog"});
  CHECK(r.code == 0);
  CHECK(r.out.find("F0") != std::string::npos);
  CHECK(call({"catalog", "validate"}).code == 0);
  r = call({"catalog", "show", "F0", "--json"});
  CHECK(nlohmann::json::parse(r.out).at("points") == 6);
  CHECK(call({"catalog", "show", "F9"}).code == 2);
  CHECK(call({"catalog", "frobnicate"}).code == 2);
}

TEST_CASE("certify and report") {
  auto a = call({"certify", "companion", "--json", "--stable"});
  auto b = call({"certify", "companion", "--json", "--stable"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(call({"certify", "family-axioms"}).code == 0);
  CHECK(call({"certify", "general-fine-frame"}).code == 1);
  CHECK(call({"certify", "comb-chain", "--depth", "40"}).code == 1);
  CHECK(call({"certify", "gabbay-de-jongh-soundness", "--max-points", "4"}).code == 0);
  CHECK(call({"certify", "nope"}).code == 2);

  const auto path = std::filesystem::temp_directory_path() / "kwb_test_certs.json";
  std::ofstream(path) << "[" << a.out << "]";
  auto r = call({"report", path.string(), "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("passed") == 1);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"prove"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}
