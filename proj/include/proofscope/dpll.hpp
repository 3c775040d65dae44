#pragma once

// Small deterministic propositional solver used by the model finder.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace proofscope {

/// Literals are DIMACS-style: +v / -v for variable v >= 1.
using PropLiteral = std::int32_t;

class Dpll {
 public:
  enum class Result : std::uint8_t { Satisfiable, Unsatisfiable, Interrupted };

  /// Returns the new variable (numbered from 1).
  std::int32_t new_variable();
  std::int32_t variable_count() const { return static_cast<std::int32_t>(value_.size()) - 1; }

  /// Adds a clause. Duplicate literals are removed; tautologies are dropped.
  void add_clause(std::vector<PropLiteral> clause);

  /// Unit propagation with two watched literals, branching on the first
  /// unassigned variable (true first). Conflicts are analysed to the first
  /// unique implication point; the learned clause drives a backjump.
  Result solve(std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

  /// Value of `var` in the satisfying assignment found by the last solve().
  bool value(std::int32_t var) const { return value_.at(static_cast<std::size_t>(var)) > 0; }

  std::uint64_t decisions() const { return decisions_; }
  std::uint64_t propagations() const { return propagations_; }
  std::uint64_t conflicts() const { return conflicts_; }

 private:
  static constexpr std::size_t kNoClause = static_cast<std::size_t>(-1);

  static std::size_t watch_index(PropLiteral lit) {
    return 2 * static_cast<std::size_t>(lit > 0 ? lit : -lit) + (lit < 0 ? 1 : 0);
  }
  int lit_value(PropLiteral lit) const {
    int v = value_[static_cast<std::size_t>(lit > 0 ? lit : -lit)];
    return lit > 0 ? v : -v;
  }
  static std::size_t var_of(PropLiteral lit) { return static_cast<std::size_t>(lit > 0 ? lit : -lit); }
  void assign(PropLiteral lit, std::size_t reason);
  std::size_t propagate();  // conflicting clause or kNoClause
  std::vector<PropLiteral> analyze(std::size_t conflict);
  void backjump(int level);
  std::size_t attach(std::vector<PropLiteral> clause);

  std::vector<std::vector<PropLiteral>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<PropLiteral> units_;
  std::vector<int> value_{0};  // index 0 unused; -1 false, 0 unassigned, +1 true
  std::vector<int> level_{0};
  std::vector<std::size_t> reason_{kNoClause};
  std::vector<PropLiteral> trail_;
  std::vector<std::size_t> level_start_;  // trail size when each decision level opened
  std::vector<char> seen_;
  std::size_t queue_head_ = 0;
  bool trivially_unsat_ = false;
  std::uint64_t decisions_ = 0;
  std::uint64_t propagations_ = 0;
  std::uint64_t conflicts_ = 0;
};

}  // namespace proofscope
