#pragma once

// SZS statuses, entailment judgments and the extended statuses.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proofscope {

enum class SzsStatus : std::uint8_t {
  Theorem,
  CounterSatisfiable,
  Satisfiable,
  Unsatisfiable,
  Timeout,
  GaveUp,
  ResourceOut,
  Unknown,
};

std::string_view szs_name(SzsStatus s);
/// Exact, case-sensitive match on the status name; anything else is Unknown.
SzsStatus parse_szs_name(std::string_view token);

enum class Entailment : std::uint8_t { Proves, DoesNotProve, Undetermined };

std::string_view entailment_name(Entailment e);

enum class ProblemKind : std::uint8_t { HasConjecture, NoConjectureUnsat };

Entailment classify(SzsStatus s, ProblemKind kind);

class VerdictConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws VerdictConflict when both Proves and DoesNotProve occur.
Entailment combine(std::span<const Entailment> verdicts);

using PremiseSet = std::set<std::string>;

struct MinimaReport {
  std::vector<PremiseSet> minima;
  bool exhaustive = false;
  std::size_t budget_spent = 0;  // engine calls
};

enum class IndependenceVerdict : std::uint8_t { Independent, Dependent, Inconclusive };

std::string_view independence_verdict_name(IndependenceVerdict v);

struct DependenceWitness {
  std::string axiom;
  PremiseSet subset;  // subset proves axiom
};

struct IndependenceReport {
  IndependenceVerdict verdict = IndependenceVerdict::Inconclusive;
  std::optional<DependenceWitness> witness;
  std::map<std::string, Entailment> per_axiom;  // "the others prove it"
};

enum class ExtendedStatus : std::uint8_t {
  IndependentAxioms,
  DependentAxioms,
  MinimalPremises,
  NonMinimalPremises,
  UniqueMinimum,
  MultipleIncomparableMinima,
};

std::string_view extended_status_name(ExtendedStatus s);

/// Order: independence, minimality, uniqueness. Absent reports contribute nothing.
std::vector<ExtendedStatus> extended_statuses(const MinimaReport* minima, const IndependenceReport* indep,
                                              std::size_t premise_count);

}  // namespace proofscope
