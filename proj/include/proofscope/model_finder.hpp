#pragma once

// MACE-style finite model search: flatten, ground over {0..n-1}, solve, decode.

#include <optional>
#include <vector>

#include "proofscope/logic.hpp"

namespace proofscope {

struct ModelLimits {
  int max_domain_size = 4;
  double wall_clock_budget = 10.0;  // seconds
};

struct ModelOutcome {
  enum class Kind : std::uint8_t { ModelFound, ExhaustedUpTo, ResourceOut };

  Kind kind = Kind::ResourceOut;
  std::optional<Interpretation> model;
  int exhausted_size = 0;  // largest size shown to have no model
};

std::string_view outcome_name(ModelOutcome::Kind kind);

/// Tries domain sizes 1..max_domain_size in order. A returned model has been
/// checked against every input formula with evaluate().
ModelOutcome find_model(const std::vector<NamedFormula>& formulas, const ModelLimits& limits);

/// True iff every formula evaluates to true in `m`. Throws MissingSymbol.
bool verify_model(const Interpretation& m, const std::vector<Formula>& formulas);

}  // namespace proofscope
