#pragma once

// Given-clause resolution prover with premise-origin tracking.

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "proofscope/logic.hpp"
#include "proofscope/tptp.hpp"

namespace proofscope {

/// Origin recorded on clauses from the negated conjecture.
inline constexpr const char* kNegatedConjectureOrigin = "$negated_conjecture";
/// Origin recorded on the congruence axioms added for equality.
inline constexpr const char* kEqualityOrigin = "$equality";

struct ProverLimits {
  double wall_clock_budget = 10.0;  // seconds
  std::size_t max_clause_count = 100000;
  std::optional<std::size_t> max_clause_weight;  // unlimited when empty
};

enum class ProofStatus : std::uint8_t {
  Theorem,
  CounterSatisfiable,
  Unsatisfiable,
  Satisfiable,
  ResourceOut,
  GaveUp,
};

std::string_view proof_status_name(ProofStatus s);

struct ProofStatistics {
  std::size_t generated = 0;
  std::size_t kept = 0;
  std::size_t processed = 0;
  double elapsed = 0.0;  // seconds

  friend bool operator==(const ProofStatistics& a, const ProofStatistics& b) {
    return a.generated == b.generated && a.kept == b.kept && a.processed == b.processed;
  }
};

struct ProofOutcome {
  ProofStatus status = ProofStatus::GaveUp;
  /// Premise names among the ancestors of the empty clause.
  std::set<std::string> used_premises;
  /// Set when the refutation did not involve the negated conjecture.
  bool axioms_inconsistent = false;
  ProofStatistics statistics;
};

/// Clausifies the premises with the negated conjecture and saturates.
/// Throws std::invalid_argument when `t` has no conjecture.
ProofOutcome prove(const Theory& t, const ProverLimits& limits);

/// Saturates the premises alone. Throws std::invalid_argument when `t` has a conjecture.
ProofOutcome refute(const Theory& t, const ProverLimits& limits);

/// Raw saturation over an origin-tagged clause set. Reports Unsatisfiable /
/// Satisfiable / ResourceOut / GaveUp; used_premises is the empty clause's
/// origin set with the reserved origins removed.
ProofOutcome saturate(const ClauseSet& clauses, const ProverLimits& limits);

}  // namespace proofscope
