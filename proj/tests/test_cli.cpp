#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "proofscope/cli.hpp"
#include "test_support.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "proofscope");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = proofscope::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--json");
  auto r = run(args);
  CHECK(r.code == expected_code);
  json j = json::parse(r.out);
  CHECK(j["exit_code"] == expected_code);
  return j;
}

std::string c(const std::string& rel) { return testing::corpus(rel).string(); }

void strip_elapsed(json& j) {
  if (j.is_object()) {
    j.erase("elapsed");
    for (auto& [k, v] : j.items()) strip_elapsed(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_elapsed(v);
  }
}

std::string stub_config() {
  auto path = std::filesystem::temp_directory_path() / "proofscope-cli-stubs.json";
  json engines = json::array();
  auto add = [&](const std::string& id, const std::string& mode, const std::string& cap) {
    engines.push_back(json{{"id", id},
                           {"executable", PROOFSCOPE_STUB_ENGINE},
                           {"arguments", {mode, "{problem}", "{timeout}"}},
                           {"capabilities", {cap}}});
  };
  add("stub-theorem", "theorem", "proves");
  add("stub-countersat", "countersat", "proves");
  add("stub-garbage", "garbage", "proves");
  std::ofstream(path) << json{{"engines", engines}}.dump(2);
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("symbols exit codes") {
  CHECK(run_json({"symbols", c("lint/clean.p")}, 0)["payload"]["hapax"].empty());
  auto typo = run_json({"symbols", c("lint/typo.p")}, 1);
  CHECK(typo["payload"]["hapax"].size() == 2);
  CHECK(typo["payload"]["hapax"][0]["symbol"] == "conected_to");
  auto missing = run_json({"symbols", "/nonexistent/problem.p"}, 2);
  CHECK(missing["error"]["message"].get<std::string>().find("cannot read") != std::string::npos);
  CHECK(run({"symbols", c("lint/typo.p")}).out.find("conected_to") != std::string::npos);
}

TEST_CASE("parse errors are input errors with a location") {
  auto path = std::filesystem::temp_directory_path() / "proofscope-bad.p";
  std::ofstream(path) << "fof(a1, axiom, p).\nfof(a1, axiom, q).\n";
  auto j = run_json({"reprove", path.string()}, 2);
  CHECK(j["error"]["location"]["line"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("option validation") {
  CHECK(run({"reprove", c("toys/trivial.p"), "--timeout", "0"}).code == 2);
  CHECK(run({"reprove", c("toys/trivial.p"), "--parallel", "0"}).code == 2);
  CHECK(run({"reprove", c("toys/trivial.p"), "--method", "magic"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"reprove", c("toys/trivial.p"), "--engine", "nonesuch"}).code == 2);
}

TEST_CASE("reprove") {
  auto trivial = run_json({"reprove", c("toys/trivial.p")}, 0);
  CHECK(trivial["payload"]["trace"]["stages"].size() == 1);
  CHECK(trivial["payload"]["trace"]["fixpoint_reached"] == true);

  run_json({"reprove", c("toys/countersat.p")}, 3);
  run_json({"reprove", c("toys/inconsistent.p")}, 2);
  run_json({"reprove", c("toys/trivial.p"), "--unsat-mode"}, 2);
  auto unsat = run_json({"reprove", c("unsat/u01.p"), "--unsat-mode", "--method", "semantic"}, 0);
  CHECK(unsat["payload"]["mode"] == "unsat");

  auto either = run_json({"minimize", c("toys/disjunction.p")}, 0);
  CHECK(either["payload"]["confirmation"] == "NotSufficient");
  CHECK(either["payload"]["minima"]["minima"] == json::parse(R"([["a1"], ["a2"]])"));
  CHECK(either["extended_statuses"].size() == 2);
  CHECK(either["extended_statuses"][1] == "MultipleIncomparableMinima");
}

TEST_CASE("minimize dreadbury mansion") {
  auto j = run_json({"minimize", c("PUZ001+1.p")}, 0);
  const auto& p = j["payload"];
  CHECK(p["classification"]["eliminable"] == json::parse(R"(["pel55_2_1", "pel55_2_2", "pel55_2_3"])"));
  CHECK(p["classification"]["needed"].size() == 10);
  CHECK(p["confirmation"] == "ConfirmedMinimum");
  CHECK(p["minima"]["minima"].size() == 1);
  CHECK(p["minima"]["exhaustive"] == true);
  bool unique = false;
  for (const auto& s : j["extended_statuses"]) unique = unique || s == "UniqueMinimum";
  CHECK(unique);
}

TEST_CASE("independence") {
  run_json({"independence", c("independence/i01.p"), "--method", "naive"}, 0);
  auto dep = run_json({"independence", c("independence/i02.p"), "--method", "failfast"}, 1);
  CHECK(dep["payload"]["witness"]["axiom"] == "a2");
  CHECK(dep["extended_statuses"] == json::parse(R"(["DependentAxioms"])"));
  run_json({"independence", c("independence/i01.p"), "--method", "random", "--trials", "10", "--seed", "7"}, 4);
  auto warned = run_json({"independence", c("toys/trivial.p")}, 0);
  CHECK(warned["warnings"].size() == 1);
}

TEST_CASE("consistency") {
  auto cs = run_json({"consistency", c("toys/countersat.p")}, 0);
  REQUIRE(cs["payload"]["rows"].size() == 3);
  CHECK(cs["payload"]["rows"][2]["outcome"]["kind"] == "ModelFound");
  CHECK(cs["payload"]["rows"][2]["flagged"] == true);
  CHECK_FALSE(cs["warnings"].empty());
  CHECK(run({"consistency", c("toys/countersat.p")}).out.find("countersatisfiable") != std::string::npos);

  auto bad = run_json({"consistency", c("toys/inconsistent.p")}, 0);
  CHECK(bad["payload"]["rows"].size() == 1);
  CHECK(bad["payload"]["rows"][0]["outcome"]["kind"] == "ExhaustedUpTo");
  CHECK(bad["warnings"].size() == 1);
}

TEST_CASE("identical runs give identical reports apart from elapsed time") {
  const std::vector<std::vector<std::string>> commands = {
      {"minimize", c("minima/p05.p"), "--parallel", "3"},
      {"reprove", c("PUZ001+1.p")},
      {"independence", c("independence/i05.p"), "--method", "random", "--seed", "3", "--trials", "20"},
      {"consistency", c("toys/countersat.p")},
      {"symbols", c("lint/typo.p")},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    auto a = run_json(args, run(args).code);
    auto b = run_json(args, run(args).code);
    strip_elapsed(a);
    strip_elapsed(b);
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("text output is derived from the JSON report") {
  auto j = run_json({"minimize", c("toys/disjunction.p")}, 0);
  auto text = run({"minimize", c("toys/disjunction.p")}).out;
  CHECK(text == proofscope::cli::render_text(j));
}

TEST_CASE("external engines through the CLI") {
  std::string config = stub_config();
  auto yes = run_json({"reprove", c("minima/p01.p"), "--engine-config", config, "--engine", "stub-theorem"}, 0);
  CHECK(yes["payload"]["initial"] == "Proves");
  run_json({"reprove", c("minima/p01.p"), "--engine-config", config, "--engine", "stub-garbage"}, 3);

  // Without cross-checking the first decisive engine wins; with it the disagreement surfaces.
  run_json({"minimize", c("minima/p01.p"), "--engine-config", config, "--engine", "stub-theorem", "--engine",
            "stub-countersat"},
           0);
  auto conflict = run_json({"minimize", c("minima/p01.p"), "--engine-config", config, "--engine", "stub-theorem",
                            "--engine", "stub-countersat", "--cross-check"},
                           5);
  CHECK(conflict["error"]["message"].get<std::string>().find("disagree") != std::string::npos);
  std::filesystem::remove(config);
}

}  // TEST_SUITE
