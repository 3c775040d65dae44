#include "proofscope/verdict.hpp"

#include <array>

namespace proofscope {

namespace {

constexpr std::array<std::pair<SzsStatus, std::string_view>, 8> kSzsNames{{
    {SzsStatus::Theorem, "Theorem"},
    {SzsStatus::CounterSatisfiable, "CounterSatisfiable"},
    {SzsStatus::Satisfiable, "Satisfiable"},
    {SzsStatus::Unsatisfiable, "Unsatisfiable"},
    {SzsStatus::Timeout, "Timeout"},
    {SzsStatus::GaveUp, "GaveUp"},
    {SzsStatus::ResourceOut, "ResourceOut"},
    {SzsStatus::Unknown, "Unknown"},
}};

}  // namespace

std::string_view szs_name(SzsStatus s) {
  for (const auto& [status, name] : kSzsNames)
    if (status == s) return name;
  return "Unknown";
}

SzsStatus parse_szs_name(std::string_view token) {
  for (const auto& [status, name] : kSzsNames)
    if (name == token) return status;
  return SzsStatus::Unknown;
}

std::string_view entailment_name(Entailment e) {
  switch (e) {
    case Entailment::Proves: return "Proves";
    case Entailment::DoesNotProve: return "DoesNotProve";
    case Entailment::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

Entailment classify(SzsStatus s, ProblemKind kind) {
  if (kind == ProblemKind::HasConjecture) {
    if (s == SzsStatus::Theorem) return Entailment::Proves;
    if (s == SzsStatus::CounterSatisfiable) return Entailment::DoesNotProve;
  } else {
    if (s == SzsStatus::Unsatisfiable) return Entailment::Proves;
    if (s == SzsStatus::Satisfiable) return Entailment::DoesNotProve;
  }
  return Entailment::Undetermined;
}

Entailment combine(std::span<const Entailment> verdicts) {
  bool proves = false;
  bool refutes = false;
  for (Entailment e : verdicts) {
    proves |= e == Entailment::Proves;
    refutes |= e == Entailment::DoesNotProve;
  }
  if (proves && refutes) throw VerdictConflict("engines disagree: one proves the goal, another refutes it");
  if (proves) return Entailment::Proves;
  if (refutes) return Entailment::DoesNotProve;
  return Entailment::Undetermined;
}

std::string_view independence_verdict_name(IndependenceVerdict v) {
  switch (v) {
    case IndependenceVerdict::Independent: return "Independent";
    case IndependenceVerdict::Dependent: return "Dependent";
    case IndependenceVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view extended_status_name(ExtendedStatus s) {
  switch (s) {
    case ExtendedStatus::IndependentAxioms: return "IndependentAxioms";
    case ExtendedStatus::DependentAxioms: return "DependentAxioms";
    case ExtendedStatus::MinimalPremises: return "MinimalPremises";
    case ExtendedStatus::NonMinimalPremises: return "NonMinimalPremises";
    case ExtendedStatus::UniqueMinimum: return "UniqueMinimum";
    case ExtendedStatus::MultipleIncomparableMinima: return "MultipleIncomparableMinima";
  }
  return "";
}

std::vector<ExtendedStatus> extended_statuses(const MinimaReport* minima, const IndependenceReport* indep,
                                              std::size_t premise_count) {
  std::vector<ExtendedStatus> out;
  if (indep) {
    if (indep->verdict == IndependenceVerdict::Independent) out.push_back(ExtendedStatus::IndependentAxioms);
    if (indep->verdict == IndependenceVerdict::Dependent) out.push_back(ExtendedStatus::DependentAxioms);
  }
  if (minima && !minima->minima.empty()) {
    bool proper = false;
    for (const auto& m : minima->minima) proper |= m.size() < premise_count;
    out.push_back(proper ? ExtendedStatus::NonMinimalPremises : ExtendedStatus::MinimalPremises);
    if (minima->minima.size() >= 2) out.push_back(ExtendedStatus::MultipleIncomparableMinima);
    else if (minima->exhaustive) out.push_back(ExtendedStatus::UniqueMinimum);
  }
  return out;
}

}  // namespace proofscope
