#pragma once

// Premise analyses: reproving, needed premises, minima, independence, consistency.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "proofscope/engine.hpp"
#include "proofscope/verdict.hpp"

namespace proofscope {

/// One derivability question: do `premises` prove `goal`? Without a goal the
/// question is whether `premises` are unsatisfiable.
struct Query {
  std::vector<AnnotatedFormula> premises;
  std::optional<AnnotatedFormula> goal;

  ProblemKind kind() const { return goal ? ProblemKind::HasConjecture : ProblemKind::NoConjectureUnsat; }
  Theory theory() const;
  std::string key() const;
};

/// `subset` selects premises of `t` by name; the goal is t's conjecture, if any.
Query make_query(const Theory& t, const PremiseSet& subset);

struct JudgeOptions {
  double timeout = 10.0;  // per engine call, seconds
  std::size_t parallelism = 1;
  /// Run every engine on every query and combine; otherwise stop at the first decisive verdict.
  bool cross_check = false;
};

/// Turns queries into Entailments using a fixed engine list. Model-finding-only
/// engines are consulted before provers. Results are cached by query.
class Judge {
 public:
  Judge(std::vector<std::shared_ptr<const Engine>> engines, JudgeOptions options);

  Entailment decide(const Query& q, bool use_cache = true);
  /// Runs up to `parallelism` queries concurrently; results follow input order.
  std::vector<Entailment> decide_all(const std::vector<Query>& queries, bool use_cache = true);

  /// A single counted engine call.
  EngineVerdict run(const Engine& engine, const Query& q);

  /// First engine with the proves capability. Throws std::invalid_argument if none.
  const Engine& prover() const;
  /// First engine with the finds_models capability, or nullptr.
  const Engine* model_finder() const;

  std::size_t engine_calls() const { return engine_calls_.load(); }
  const JudgeOptions& options() const { return options_; }

 private:
  Entailment decide_uncached(const Query& q);

  std::vector<std::shared_ptr<const Engine>> engines_;
  std::vector<const Engine*> order_;
  JudgeOptions options_;
  std::mutex cache_mutex_;
  std::map<std::string, Entailment> cache_;
  std::atomic<std::size_t> engine_calls_{0};
};

/// Premise names of `t` in declaration order.
std::vector<std::string> in_declaration_order(const Theory& t, const PremiseSet& names);
PremiseSet all_premises(const Theory& t);

struct ReproveStage {
  PremiseSet premises;
  EngineVerdict verdict;
};

struct ReproveTrace {
  std::vector<ReproveStage> stages;
  bool fixpoint_reached = false;

  /// True when the first stage proved the goal.
  bool confirmed() const;
};

/// Restricts to the prover's used premises until they stop shrinking.
ReproveTrace syntactic_reprove(const Theory& t, Judge& judge);

struct NeededClassification {
  PremiseSet analyzed;
  PremiseSet needed;
  PremiseSet eliminable;
  PremiseSet unknown;

  bool approximate() const { return !unknown.empty(); }
};

/// Deletes each premise of `start` in turn and decides the rest.
NeededClassification classify_needed(const Theory& t, const PremiseSet& start, Judge& judge);

enum class Confirmation : std::uint8_t { ConfirmedMinimum, NotSufficient, Undetermined };

std::string_view confirmation_name(Confirmation c);

struct SemanticResult {
  NeededClassification classification;
  PremiseSet t_star;  // needed plus unknown
  Confirmation confirmation = Confirmation::Undetermined;
};

SemanticResult semantic_reprove(const Theory& t, const PremiseSet& start, Judge& judge);

/// Candidates are needed ∪ E for E ⊆ eliminable, ascending |E| then
/// lexicographic in declaration order, pruned by known minima and by
/// supersets already shown insufficient.
MinimaReport enumerate_minima(const Theory& t, const NeededClassification& cls, Judge& judge,
                              std::size_t subset_budget);

inline constexpr std::size_t kBruteForceLimit = 12;

/// Decides every subset of t's premises without caching or inference.
/// Throws std::invalid_argument above kBruteForceLimit premises.
MinimaReport brute_force_minima(const Theory& t, Judge& judge);

/// `axioms` must not contain a conjecture.
IndependenceReport independence_naive(const Theory& axioms, Judge& judge);
/// max_subset_size defaults to n-1.
IndependenceReport independence_failfast(const Theory& axioms, Judge& judge,
                                         std::optional<std::size_t> max_subset_size = std::nullopt);
IndependenceReport independence_random(const Theory& axioms, Judge& judge, std::size_t trials, std::uint64_t seed);

struct ConsistencyRow {
  std::string check;
  std::string engine_id;
  double budget = 0.0;
  SzsStatus status = SzsStatus::Unknown;
  std::optional<ModelOutcome> outcome;
  std::string reading;
  bool flagged = false;
};

struct ConsistencyReport {
  ConsistencyRow axioms_only;
  std::optional<ConsistencyRow> axioms_plus_conjecture;
  std::optional<ConsistencyRow> axioms_plus_negated_conjecture;
};

ConsistencyReport consistency_triple(const Theory& t, const Engine& model_finder, Judge& judge);

}  // namespace proofscope
