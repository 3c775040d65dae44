#include "proofscope/dpll.hpp"

#include <algorithm>
#include <stdexcept>

namespace proofscope {

std::int32_t Dpll::new_variable() {
  value_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoClause);
  watches_.resize(2 * value_.size());
  return variable_count();
}

void Dpll::add_clause(std::vector<PropLiteral> clause) {
  std::sort(clause.begin(), clause.end(), [](PropLiteral a, PropLiteral b) {
    auto va = a > 0 ? a : -a;
    auto vb = b > 0 ? b : -b;
    return va != vb ? va < vb : a < b;
  });
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 0; i + 1 < clause.size(); ++i)
    if (clause[i] == -clause[i + 1]) return;
  for (PropLiteral l : clause)
    if (l == 0 || (l > 0 ? l : -l) > variable_count()) throw std::out_of_range("literal out of range");
  if (clause.empty()) {
    trivially_unsat_ = true;
    return;
  }
  if (clause.size() == 1) {
    units_.push_back(clause[0]);
    return;
  }
  attach(std::move(clause));
}

std::size_t Dpll::attach(std::vector<PropLiteral> clause) {
  std::size_t idx = clauses_.size();
  watches_[watch_index(clause[0])].push_back(idx);
  watches_[watch_index(clause[1])].push_back(idx);
  clauses_.push_back(std::move(clause));
  return idx;
}

void Dpll::assign(PropLiteral lit, std::size_t reason) {
  std::size_t v = var_of(lit);
  value_[v] = lit > 0 ? 1 : -1;
  level_[v] = static_cast<int>(level_start_.size());
  reason_[v] = reason;
  trail_.push_back(lit);
}

std::size_t Dpll::propagate() {
  while (queue_head_ < trail_.size()) {
    PropLiteral falsified = -trail_[queue_head_++];
    auto& watch = watches_[watch_index(falsified)];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < watch.size(); ++i) {
      std::size_t ci = watch[i];
      auto& c = clauses_[ci];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value(c[0]) > 0) {
        watch[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[watch_index(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      watch[keep++] = ci;
      if (lit_value(c[0]) < 0) {
        for (std::size_t j = i + 1; j < watch.size(); ++j) watch[keep++] = watch[j];
        watch.resize(keep);
        return ci;
      }
      ++propagations_;
      assign(c[0], ci);
    }
    watch.resize(keep);
  }
  return kNoClause;
}

// First-UIP learning. The asserting literal is placed first, the literal with
// the highest remaining level second.
std::vector<PropLiteral> Dpll::analyze(std::size_t conflict) {
  seen_.assign(value_.size(), 0);
  std::vector<PropLiteral> learned{0};
  int current = static_cast<int>(level_start_.size());
  int open = 0;
  std::size_t index = trail_.size();
  PropLiteral pivot = 0;
  std::size_t reason = conflict;
  for (;;) {
    for (PropLiteral l : clauses_[reason]) {
      if (l == pivot) continue;
      std::size_t v = var_of(l);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] == current) ++open;
      else learned.push_back(l);
    }
    do {
      pivot = trail_[--index];
    } while (!seen_[var_of(pivot)]);
    if (--open == 0) break;
    reason = reason_[var_of(pivot)];
  }
  learned[0] = -pivot;
  if (learned.size() > 2) {
    auto hi = std::max_element(learned.begin() + 1, learned.end(), [&](PropLiteral a, PropLiteral b) {
      return level_[var_of(a)] < level_[var_of(b)];
    });
    std::iter_swap(learned.begin() + 1, hi);
  }
  return learned;
}

void Dpll::backjump(int level) {
  if (static_cast<std::size_t>(level) >= level_start_.size()) return;
  std::size_t keep = level_start_[static_cast<std::size_t>(level)];
  while (trail_.size() > keep) {
    std::size_t v = var_of(trail_.back());
    trail_.pop_back();
    value_[v] = 0;
    reason_[v] = kNoClause;
  }
  level_start_.resize(static_cast<std::size_t>(level));
  queue_head_ = keep;
}

Dpll::Result Dpll::solve(std::optional<std::chrono::steady_clock::time_point> deadline) {
  backjump(0);
  if (trivially_unsat_) return Result::Unsatisfiable;
  for (PropLiteral u : units_) {
    int v = lit_value(u);
    if (v < 0) return Result::Unsatisfiable;
    if (v == 0) assign(u, kNoClause);
  }
  std::int32_t next_var = 1;
  std::uint64_t steps = 0;
  for (;;) {
    std::size_t conflict = propagate();
    if (conflict != kNoClause) {
      ++conflicts_;
      if (level_start_.empty()) return Result::Unsatisfiable;
      std::vector<PropLiteral> learned = analyze(conflict);
      int target = learned.size() > 1 ? level_[var_of(learned[1])] : 0;
      backjump(target);
      next_var = 1;
      if (learned.size() == 1) {
        units_.push_back(learned[0]);
        assign(learned[0], kNoClause);
      } else {
        PropLiteral asserting = learned[0];
        std::size_t ci = attach(std::move(learned));
        assign(asserting, ci);
      }
      continue;
    }
    if (deadline && (++steps & 0x3ff) == 0 && std::chrono::steady_clock::now() > *deadline)
      return Result::Interrupted;
    while (next_var <= variable_count() && value_[static_cast<std::size_t>(next_var)] != 0) ++next_var;
    if (next_var > variable_count()) return Result::Satisfiable;
    ++decisions_;
    level_start_.push_back(trail_.size());
    assign(next_var, kNoClause);
  }
}

}  // namespace proofscope
