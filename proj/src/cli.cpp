#include "proofscope/cli.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "proofscope/analysis.hpp"

namespace proofscope::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::string problem_path;
  std::vector<std::string> include_dirs;
  std::vector<std::string> engines;
  std::string engine_config;
  double timeout = 10.0;
  std::size_t parallelism = 1;
  std::uint64_t seed = 0;
  bool json_output = false;
  int max_domain_size = 4;
  std::size_t subset_budget = 4096;
  bool cross_check = false;
};

struct ReproveOptions {
  std::string method = "syntactic";
  bool chain_minima = false;
  bool unsat_mode = false;
  std::string start_from = "full";
};

struct IndependenceOptions {
  std::string method = "naive";
  std::size_t trials = 100;
  std::size_t max_subset_size = 0;  // 0: n-1
};

// Ends the command early with a given exit code and message.
struct Abort {
  int code;
  std::string message;
};

void add_shared_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("problem", cfg.problem_path, "TPTP problem file")->required();
  sub->add_option("--include-dir,-I", cfg.include_dirs, "directory searched for include files (repeatable)");
  sub->add_option("--engine", cfg.engines,
                  "engine id: builtin-prover, builtin-model-finder, or an id from --engine-config (repeatable)");
  sub->add_option("--engine-config", cfg.engine_config, "JSON file describing external engines");
  sub->add_option("--timeout", cfg.timeout, "seconds per engine call")->check(CLI::Range(1.0, 1.0e6));
  sub->add_option("--parallel", cfg.parallelism, "concurrent engine calls")->check(CLI::Range(1, 1024));
  sub->add_option("--seed", cfg.seed, "seed for randomized procedures");
  sub->add_flag("--json", cfg.json_output, "emit the report as JSON");
  sub->add_option("--max-domain-size", cfg.max_domain_size, "largest domain tried by the built-in model finder")
      ->check(CLI::Range(1, 16));
  sub->add_option("--subset-budget", cfg.subset_budget, "candidate subsets decided during minima search")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  sub->add_flag("--cross-check", cfg.cross_check, "consult every engine on every query and compare verdicts");
}

void add_reprove_options(CLI::App* sub, ReproveOptions& opt, bool with_method) {
  if (with_method) {
    sub->add_option("--method", opt.method, "syntactic or semantic")->check(CLI::IsMember({"syntactic", "semantic"}));
    sub->add_flag("--chain-minima", opt.chain_minima, "continue into minima enumeration");
  }
  sub->add_flag("--unsat-mode", opt.unsat_mode, "problem has no conjecture; analyse unsatisfiability instead");
  sub->add_option("--start-from", opt.start_from, "semantic reproving starts from the full premise set or the used premises")
      ->check(CLI::IsMember({"full", "used"}));
}

std::vector<std::shared_ptr<const Engine>> build_engines(const RunConfig& cfg) {
  std::vector<EngineSpec> specs;
  if (!cfg.engine_config.empty()) specs = load_engine_config(cfg.engine_config);
  std::vector<std::string> ids = cfg.engines;
  if (ids.empty()) ids = {kBuiltinModelFinderId, kBuiltinProverId};
  std::vector<std::shared_ptr<const Engine>> engines;
  for (const auto& id : ids) {
    if (id == kBuiltinProverId) {
      engines.push_back(std::make_shared<BuiltinProverEngine>());
      continue;
    }
    if (id == kBuiltinModelFinderId) {
      engines.push_back(std::make_shared<BuiltinModelFinderEngine>(cfg.max_domain_size));
      continue;
    }
    auto it = std::find_if(specs.begin(), specs.end(), [&](const EngineSpec& s) { return s.id == id; });
    if (it == specs.end()) throw EngineConfigError("unknown engine id '" + id + "'");
    auto engine = std::make_shared<ExternalEngine>(*it);
    engine->check_available();
    engines.push_back(std::move(engine));
  }
  return engines;
}

json names_json(const Theory& t, const PremiseSet& names) {
  json out = json::array();
  for (const auto& n : in_declaration_order(t, names)) out.push_back(n);
  return out;
}

json verdict_json(const EngineVerdict& v, const Theory& t) {
  return json{{"engine", v.engine_id},
              {"status", szs_name(v.status)},
              {"used_premises", names_json(t, v.used_premises)},
              {"premise_info", v.premise_info},
              {"digest", v.raw_output_digest},
              {"elapsed", v.elapsed}};
}

json trace_json(const ReproveTrace& trace, const Theory& t) {
  json stages = json::array();
  for (const auto& s : trace.stages)
    stages.push_back(json{{"premises", names_json(t, s.premises)}, {"verdict", verdict_json(s.verdict, t)}});
  return json{{"stages", stages}, {"fixpoint_reached", trace.fixpoint_reached}};
}

json minima_json(const MinimaReport& r, const Theory& t) {
  json sets = json::array();
  for (const auto& m : r.minima) sets.push_back(names_json(t, m));
  return json{{"minima", sets}, {"exhaustive", r.exhaustive}, {"budget_spent", r.budget_spent}};
}

json signature_entry_json(const SignatureEntry& e) {
  return json{{"symbol", e.symbol},
              {"kind", kind_name(e.kind)},
              {"arity", e.arity},
              {"occurrences", e.occurrence_count},
              {"occurring_in", e.occurring_in}};
}

json model_json(const std::optional<ModelOutcome>& outcome) {
  if (!outcome) return nullptr;
  json out{{"kind", outcome_name(outcome->kind)}};
  out["domain_size"] = outcome->model ? json(outcome->model->domain_size()) : json(nullptr);
  out["exhausted_size"] = outcome->exhausted_size;
  out["model"] = outcome->model ? json(outcome->model->to_string()) : json(nullptr);
  return out;
}

json row_json(const ConsistencyRow& row) {
  return json{{"check", row.check},
              {"engine", row.engine_id},
              {"budget", row.budget},
              {"status", szs_name(row.status)},
              {"outcome", model_json(row.outcome)},
              {"reading", row.reading},
              {"flagged", row.flagged}};
}

json extended_json(const std::vector<ExtendedStatus>& statuses) {
  json out = json::array();
  for (auto s : statuses) out.push_back(extended_status_name(s));
  return out;
}

// ---- commands -------------------------------------------------------------

struct Context {
  const RunConfig& cfg;
  const Theory& theory;
  Judge& judge;
  json& report;
};

int cmd_symbols(Context& ctx) {
  json signature = json::array();
  for (const auto& e : signature_of(ctx.theory)) signature.push_back(signature_entry_json(e));
  json hapax = json::array();
  for (const auto& e : hapax_legomena(ctx.theory)) hapax.push_back(signature_entry_json(e));
  bool found = !hapax.empty();
  ctx.report["payload"] = json{{"signature", signature}, {"hapax", hapax}};
  return found ? kFinding : kOk;
}

PremiseSet last_proved_stage(const ReproveTrace& trace, ProblemKind kind) {
  PremiseSet out;
  for (const auto& s : trace.stages)
    if (classify(s.verdict.status, kind) == Entailment::Proves) out = s.premises;
  return out;
}

int cmd_reprove(Context& ctx, const ReproveOptions& opt) {
  const Theory& t = ctx.theory;
  if (!t.has_conjecture() && !opt.unsat_mode)
    throw Abort{kInputError, "the problem has no conjecture; pass --unsat-mode to analyse unsatisfiability"};
  if (t.has_conjecture() && opt.unsat_mode)
    throw Abort{kInputError, "--unsat-mode expects a problem without a conjecture"};
  ProblemKind kind = opt.unsat_mode ? ProblemKind::NoConjectureUnsat : ProblemKind::HasConjecture;

  json payload{{"method", opt.method},
               {"mode", opt.unsat_mode ? "unsat" : "conjecture"},
               {"start_from", opt.method == "semantic" ? json(opt.start_from) : json(nullptr)},
               {"initial", nullptr},
               {"trace", nullptr},
               {"classification", nullptr},
               {"t_star", nullptr},
               {"confirmation", nullptr},
               {"minima", nullptr}};
  auto finish = [&](int code) {
    ctx.report["payload"] = payload;
    return code;
  };

  PremiseSet start = all_premises(t);
  if (opt.method == "syntactic" || opt.start_from == "used") {
    ReproveTrace trace = syntactic_reprove(t, ctx.judge);
    payload["trace"] = trace_json(trace, t);
    payload["initial"] = entailment_name(classify(trace.stages.front().verdict.status, kind));
    if (!trace.confirmed()) return finish(kUnconfirmed);
    if (opt.method == "syntactic") return finish(kOk);
    start = last_proved_stage(trace, kind);
  } else {
    Entailment initial = ctx.judge.decide(make_query(t, start));
    payload["initial"] = entailment_name(initial);
    if (initial != Entailment::Proves) return finish(kUnconfirmed);
  }

  SemanticResult sem = semantic_reprove(t, start, ctx.judge);
  const auto& cls = sem.classification;
  payload["classification"] = json{{"analyzed", names_json(t, cls.analyzed)},
                                   {"needed", names_json(t, cls.needed)},
                                   {"eliminable", names_json(t, cls.eliminable)},
                                   {"unknown", names_json(t, cls.unknown)},
                                   {"approximate", cls.approximate()}};
  payload["t_star"] = names_json(t, sem.t_star);
  payload["confirmation"] = confirmation_name(sem.confirmation);
  if (opt.chain_minima || sem.confirmation == Confirmation::ConfirmedMinimum) {
    MinimaReport minima = enumerate_minima(t, cls, ctx.judge, ctx.cfg.subset_budget);
    payload["minima"] = minima_json(minima, t);
    ctx.report["extended_statuses"] = extended_json(extended_statuses(&minima, nullptr, cls.analyzed.size()));
  }
  return finish(sem.confirmation == Confirmation::Undetermined ? kInconclusive : kOk);
}

int cmd_independence(Context& ctx, const IndependenceOptions& opt) {
  std::vector<AnnotatedFormula> axioms;
  for (const auto* p : ctx.theory.premises()) axioms.push_back(*p);
  if (const auto* c = ctx.theory.conjecture())
    ctx.report["warnings"].push_back("conjecture '" + c->name + "' ignored by independence analysis");
  if (axioms.empty()) throw Abort{kInputError, "independence analysis needs at least one axiom"};
  Theory axiom_theory(axioms, ctx.theory.origin());

  IndependenceReport r;
  if (opt.method == "naive") {
    r = independence_naive(axiom_theory, ctx.judge);
  } else if (axioms.size() < 2) {
    throw Abort{kInputError, opt.method + " independence needs at least two axioms"};
  } else if (opt.method == "failfast") {
    std::optional<std::size_t> k;
    if (opt.max_subset_size > 0) {
      if (opt.max_subset_size > axioms.size() - 1) throw Abort{kInputError, "--max-subset-size exceeds n-1"};
      k = opt.max_subset_size;
    }
    r = independence_failfast(axiom_theory, ctx.judge, k);
  } else {
    r = independence_random(axiom_theory, ctx.judge, opt.trials, ctx.cfg.seed);
  }

  json per_axiom = json::array();
  for (const auto& a : axioms)
    if (auto it = r.per_axiom.find(a.name); it != r.per_axiom.end())
      per_axiom.push_back(json{{"axiom", a.name}, {"others_prove_it", entailment_name(it->second)}});
  json witness = nullptr;
  if (r.witness) witness = json{{"axiom", r.witness->axiom}, {"subset", names_json(axiom_theory, r.witness->subset)}};
  ctx.report["payload"] = json{{"method", opt.method},
                               {"verdict", independence_verdict_name(r.verdict)},
                               {"witness", witness},
                               {"per_axiom", per_axiom},
                               {"trials", opt.method == "random" ? json(opt.trials) : json(nullptr)}};
  ctx.report["extended_statuses"] = extended_json(extended_statuses(nullptr, &r, axioms.size()));
  switch (r.verdict) {
    case IndependenceVerdict::Independent: return kOk;
    case IndependenceVerdict::Dependent: return kFinding;
    case IndependenceVerdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int cmd_consistency(Context& ctx) {
  const Engine* finder = ctx.judge.model_finder();
  if (!finder) throw Abort{kInputError, "consistency checking needs an engine with the finds_models capability"};
  ConsistencyReport r = consistency_triple(ctx.theory, *finder, ctx.judge);
  json rows = json::array();
  rows.push_back(row_json(r.axioms_only));
  if (r.axioms_plus_conjecture) rows.push_back(row_json(*r.axioms_plus_conjecture));
  if (r.axioms_plus_negated_conjecture) rows.push_back(row_json(*r.axioms_plus_negated_conjecture));
  for (const auto& row : rows)
    if (row["flagged"].get<bool>()) ctx.report["warnings"].push_back(row["check"].get<std::string>() + ": " + row["reading"].get<std::string>());
  ctx.report["payload"] = json{{"rows", rows}};
  return kOk;
}

// ---- text rendering -------------------------------------------------------

std::string list_text(const json& names) {
  if (names.empty()) return "(none)";
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n.get<std::string>();
  }
  return out;
}

std::string verdict_text(const json& v) {
  std::string out = v["engine"].get<std::string>() + ": " + v["status"].get<std::string>();
  if (v["premise_info"].get<bool>()) out += ", used " + list_text(v["used_premises"]);
  return out;
}

void render_symbols(std::ostream& os, const json& p) {
  os << "signature:\n";
  for (const auto& e : p["signature"])
    os << "  " << std::left << std::setw(24) << e["symbol"].get<std::string>() << ' ' << std::setw(9)
       << e["kind"].get<std::string>() << " arity " << e["arity"].get<int>() << "  occurrences "
       << e["occurrences"].get<int>() << "  in " << list_text(e["occurring_in"]) << '\n';
  os << "hapax legomena:";
  if (p["hapax"].empty()) os << " none\n";
  else {
    os << '\n';
    for (const auto& e : p["hapax"])
      os << "  " << e["symbol"].get<std::string>() << " (" << e["kind"].get<std::string>() << ", only in "
         << list_text(e["occurring_in"]) << ")\n";
  }
}

void render_reprove(std::ostream& os, const json& p) {
  os << "method: " << p["method"].get<std::string>();
  if (!p["start_from"].is_null()) os << " (start from " << p["start_from"].get<std::string>() << " premises)";
  os << "\nmode: " << p["mode"].get<std::string>() << '\n';
  if (!p["initial"].is_null()) os << "initial verdict: " << p["initial"].get<std::string>() << '\n';
  if (!p["trace"].is_null()) {
    os << "stages:\n";
    std::size_t i = 0;
    for (const auto& s : p["trace"]["stages"])
      os << "  T" << i++ << " (" << s["premises"].size() << "): " << list_text(s["premises"]) << "\n      "
         << verdict_text(s["verdict"]) << '\n';
    os << "fixpoint reached: " << (p["trace"]["fixpoint_reached"].get<bool>() ? "yes" : "no") << '\n';
  }
  if (!p["classification"].is_null()) {
    const auto& c = p["classification"];
    os << "needed (" << c["needed"].size() << "): " << list_text(c["needed"]) << '\n';
    os << "eliminable (" << c["eliminable"].size() << "): " << list_text(c["eliminable"]) << '\n';
    os << "unknown (" << c["unknown"].size() << "): " << list_text(c["unknown"]) << '\n';
    if (c["approximate"].get<bool>()) os << "T* is approximate: unknown premises were kept\n";
    os << "T* (" << p["t_star"].size() << "): " << list_text(p["t_star"]) << '\n';
    os << "confirmation: " << p["confirmation"].get<std::string>() << '\n';
  }
  if (!p["minima"].is_null()) {
    const auto& m = p["minima"];
    os << "minima (" << m["minima"].size() << (m["exhaustive"].get<bool>() ? ", exhaustive" : ", search incomplete")
       << ", " << m["budget_spent"].get<std::size_t>() << " engine calls):\n";
    for (const auto& s : m["minima"]) os << "  {" << list_text(s) << "}\n";
  }
}

void render_independence(std::ostream& os, const json& p) {
  os << "method: " << p["method"].get<std::string>() << '\n';
  os << "verdict: " << p["verdict"].get<std::string>() << '\n';
  if (!p["witness"].is_null())
    os << "witness: {" << list_text(p["witness"]["subset"]) << "} proves " << p["witness"]["axiom"].get<std::string>()
       << '\n';
  if (!p["per_axiom"].empty()) {
    os << "others prove:\n";
    for (const auto& a : p["per_axiom"])
      os << "  " << a["axiom"].get<std::string>() << ": " << a["others_prove_it"].get<std::string>() << '\n';
  }
}

void render_consistency(std::ostream& os, const json& p) {
  for (const auto& r : p["rows"]) {
    os << (r["flagged"].get<bool>() ? "!! " : "   ") << std::left << std::setw(28) << r["check"].get<std::string>()
       << ' ' << r["status"].get<std::string>() << ": " << r["reading"].get<std::string>() << '\n';
    const auto& o = r["outcome"];
    if (!o.is_null() && !o["model"].is_null()) {
      std::istringstream lines(o["model"].get<std::string>());
      for (std::string line; std::getline(lines, line);) os << "      " << line << '\n';
    }
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  os << report["command"].get<std::string>() << ": " << report["problem"].get<std::string>() << '\n';
  if (report.contains("error") && !report["error"].is_null()) {
    os << "error: " << report["error"]["message"].get<std::string>() << '\n';
  } else {
    const auto& th = report["theory"];
    os << "premises: " << th["premise_count"].get<std::size_t>()
       << "  conjecture: " << (th["conjecture"].is_null() ? std::string("(none)") : th["conjecture"].get<std::string>())
       << '\n';
    const auto& p = report["payload"];
    const std::string cmd = report["command"].get<std::string>();
    if (!p.is_null()) {
      if (cmd == "symbols") render_symbols(os, p);
      else if (cmd == "reprove" || cmd == "minimize") render_reprove(os, p);
      else if (cmd == "independence") render_independence(os, p);
      else if (cmd == "consistency") render_consistency(os, p);
    }
  }
  for (const auto& w : report["warnings"]) os << "warning: " << w.get<std::string>() << '\n';
  if (!report["extended_statuses"].empty()) {
    os << "extended statuses:";
    for (const auto& s : report["extended_statuses"]) os << ' ' << s.get<std::string>();
    os << '\n';
  }
  os << "engine calls: " << report["engine_calls"].get<std::size_t>() << "  elapsed: " << std::fixed
     << std::setprecision(2) << report["elapsed"].get<double>() << " s  exit: " << report["exit_code"].get<int>()
     << '\n';
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Premise analysis for first-order TPTP problems", "proofscope"};
  app.require_subcommand(1);
  RunConfig cfg;
  ReproveOptions reprove;
  ReproveOptions minimize{"semantic", true, false, "full"};
  IndependenceOptions indep;

  auto* symbols_cmd = app.add_subcommand("symbols", "signature table and hapax legomena");
  auto* reprove_cmd = app.add_subcommand("reprove", "syntactic or semantic reproving");
  auto* minimize_cmd = app.add_subcommand("minimize", "semantic reproving followed by minima enumeration");
  auto* indep_cmd = app.add_subcommand("independence", "axiom independence");
  auto* consistency_cmd = app.add_subcommand("consistency", "model search on axioms, +conjecture, +negated conjecture");
  for (auto* sub : {symbols_cmd, reprove_cmd, minimize_cmd, indep_cmd, consistency_cmd}) add_shared_options(sub, cfg);
  add_reprove_options(reprove_cmd, reprove, true);
  add_reprove_options(minimize_cmd, minimize, false);
  indep_cmd->add_option("--method", indep.method, "naive, failfast or random")
      ->check(CLI::IsMember({"naive", "failfast", "random"}));
  indep_cmd->add_option("--trials", indep.trials, "random method: number of trials")->check(CLI::Range(1, 1000000));
  indep_cmd->add_option("--max-subset-size", indep.max_subset_size, "failfast method: largest subset size");

  std::ostringstream cli_out;
  std::ostringstream cli_err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return rc == 0 ? kOk : kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  auto start = Clock::now();

  json report;
  report["command"] = command;
  report["problem"] = cfg.problem_path;
  report["theory"] = nullptr;
  report["config"] = json{{"engines", cfg.engines.empty() ? std::vector<std::string>{kBuiltinModelFinderId, kBuiltinProverId}
                                                         : cfg.engines},
                          {"timeout", cfg.timeout},
                          {"parallel", cfg.parallelism},
                          {"seed", cfg.seed},
                          {"max_domain_size", cfg.max_domain_size},
                          {"subset_budget", cfg.subset_budget},
                          {"cross_check", cfg.cross_check}};
  report["payload"] = nullptr;
  report["extended_statuses"] = json::array();
  report["warnings"] = json::array();
  report["error"] = nullptr;
  report["engine_calls"] = 0;

  int code = kOk;
  std::unique_ptr<Judge> judge;
  auto fail = [&](int c, const std::string& message, const std::optional<SourceLocation>& where = std::nullopt) {
    code = c;
    json e{{"message", message}};
    if (where) e["location"] = json{{"file", where->file}, {"line", where->line}, {"column", where->column}};
    report["error"] = e;
    err << "proofscope: " << message << '\n';
  };

  try {
    std::vector<std::filesystem::path> dirs(cfg.include_dirs.begin(), cfg.include_dirs.end());
    Theory theory = parse_file(cfg.problem_path, dirs);
    const auto* conj = theory.conjecture();
    report["theory"] = json{{"premise_count", theory.premises().size()},
                            {"conjecture", conj ? json(conj->name) : json(nullptr)}};
    judge = std::make_unique<Judge>(build_engines(cfg),
                                    JudgeOptions{cfg.timeout, cfg.parallelism, cfg.cross_check});
    Context ctx{cfg, theory, *judge, report};
    if (command == "symbols") code = cmd_symbols(ctx);
    else if (command == "reprove") code = cmd_reprove(ctx, reprove);
    else if (command == "minimize") code = cmd_reprove(ctx, minimize);
    else if (command == "independence") code = cmd_independence(ctx, indep);
    else code = cmd_consistency(ctx);
  } catch (const TptpError& e) {
    fail(kInputError, e.what(), e.where());
  } catch (const EngineConfigError& e) {
    fail(kInputError, e.what());
  } catch (const VerdictConflict& e) {
    fail(kConflict, e.what());
  } catch (const Abort& a) {
    fail(a.code, a.message);
  } catch (const std::exception& e) {
    fail(kInputError, e.what());
  }

  report["engine_calls"] = judge ? judge->engine_calls() : 0;
  report["exit_code"] = code;
  report["elapsed"] = std::chrono::duration<double>(Clock::now() - start).count();
  if (cfg.json_output) out << report.dump(2) << '\n';
  else out << render_text(report);
  return code;
}

}  // namespace proofscope::cli
