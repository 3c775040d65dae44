#pragma once

// Test-only reference implementations: truth tables and exhaustive
// enumeration of finite structures. They share nothing with the library
// beyond the Formula data type.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofscope/logic.hpp"
#include "proofscope/tptp.hpp"

namespace oracle {

using proofscope::Connective;
using proofscope::Formula;
using proofscope::Term;

struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;
};

inline void collect_term(const Term& t, Signature& sig) {
  if (t.is_variable()) return;
  sig.functions[t.name] = static_cast<int>(t.args.size());
  for (const auto& a : t.args) collect_term(a, sig);
}

inline void collect(const Formula& f, Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return;
    case Formula::Kind::Atom:
      sig.predicates[f.predicate()] = static_cast<int>(f.args().size());
      for (const auto& a : f.args()) collect_term(a, sig);
      return;
    case Formula::Kind::Equality:
      for (const auto& a : f.args()) collect_term(a, sig);
      return;
    case Formula::Kind::Negation:
    case Formula::Kind::Quantified: collect(f.body(), sig); return;
    case Formula::Kind::Binary:
      collect(f.lhs(), sig);
      collect(f.rhs(), sig);
      return;
  }
}

inline bool connective(Connective op, bool a, bool b) {
  switch (op) {
    case Connective::And: return a && b;
    case Connective::Or: return a || b;
    case Connective::Implies: return !a || b;
    case Connective::ReverseImplies: return a || !b;
    case Connective::Iff: return a == b;
    case Connective::Xor: return a != b;
    case Connective::Nor: return !(a || b);
    case Connective::Nand: return !(a && b);
  }
  throw std::logic_error("connective");
}

struct Structure {
  int n = 1;
  std::map<std::string, std::vector<int>> predicates;
  std::map<std::string, std::vector<int>> functions;
};

inline std::size_t row(const std::vector<int>& args, int n) {
  std::size_t r = 0;
  for (int a : args) r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
  return r;
}

inline int value(const Structure& s, const Term& t, const std::map<std::string, int>& env) {
  if (t.is_variable()) return env.at(t.name);
  std::vector<int> args;
  for (const auto& a : t.args) args.push_back(value(s, a, env));
  return s.functions.at(t.name).at(row(args, s.n));
}

inline bool holds(const Structure& s, const Formula& f, std::map<std::string, int>& env) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.truth_value();
    case Formula::Kind::Atom: {
      std::vector<int> args;
      for (const auto& a : f.args()) args.push_back(value(s, a, env));
      return s.predicates.at(f.predicate()).at(row(args, s.n)) != 0;
    }
    case Formula::Kind::Equality: return value(s, f.args()[0], env) == value(s, f.args()[1], env);
    case Formula::Kind::Negation: return !holds(s, f.body(), env);
    case Formula::Kind::Binary: return connective(f.connective(), holds(s, f.lhs(), env), holds(s, f.rhs(), env));
    case Formula::Kind::Quantified: {
      const auto& vars = f.variables();
      std::map<std::string, int> saved = env;
      std::vector<int> assignment(vars.size(), 0);
      bool forall = f.quantifier() == proofscope::Quantifier::Forall;
      bool result = forall;
      for (;;) {
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = assignment[i];
        bool b = holds(s, f.body(), env);
        if (forall && !b) { result = false; break; }
        if (!forall && b) { result = true; break; }
        std::size_t i = vars.size();
        while (i > 0 && ++assignment[i - 1] == s.n) assignment[--i] = 0;
        if (i == 0) break;
      }
      env = std::move(saved);
      return result;
    }
  }
  throw std::logic_error("formula kind");
}

inline bool holds(const Structure& s, const Formula& f) {
  std::map<std::string, int> env;
  return holds(s, f, env);
}

inline std::size_t power(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

/// Calls `visit` on every structure of size n; stops when it returns true.
inline bool for_each_structure(const Signature& sig, int n, const std::function<bool(const Structure&)>& visit,
                               double max_structures = 1 << 22) {
  Structure s;
  s.n = n;
  double total = 1;
  for (const auto& [name, arity] : sig.predicates) {
    s.predicates[name].assign(power(n, arity), 0);
    total *= static_cast<double>(1ull << std::min<std::size_t>(power(n, arity), 60));
  }
  for (const auto& [name, arity] : sig.functions) {
    s.functions[name].assign(power(n, arity), 0);
    for (std::size_t i = 0; i < power(n, arity); ++i) total *= n;
  }
  if (total > max_structures) throw std::length_error("too many structures to enumerate");
  std::vector<std::pair<int*, int>> digits;
  for (auto& [name, table] : s.predicates)
    for (auto& v : table) digits.emplace_back(&v, 2);
  for (auto& [name, table] : s.functions)
    for (auto& v : table) digits.emplace_back(&v, n);
  for (;;) {
    if (visit(s)) return true;
    std::size_t i = 0;
    while (i < digits.size() && ++*digits[i].first == digits[i].second) *digits[i++].first = 0;
    if (i == digits.size()) return false;
  }
}

inline Signature signature_of(const std::vector<Formula>& formulas) {
  Signature sig;
  for (const auto& f : formulas) collect(f, sig);
  return sig;
}

inline std::optional<Structure> find_structure(const std::vector<Formula>& formulas, int n) {
  std::optional<Structure> found;
  for_each_structure(signature_of(formulas), n, [&](const Structure& s) {
    for (const auto& f : formulas)
      if (!holds(s, f)) return false;
    found = s;
    return true;
  });
  return found;
}

inline std::optional<int> least_model_size(const std::vector<Formula>& formulas, int max_n) {
  for (int n = 1; n <= max_n; ++n)
    if (find_structure(formulas, n)) return n;
  return std::nullopt;
}

/// Re-reads a library interpretation into an oracle structure.
inline Structure from_interpretation(const proofscope::Interpretation& m) {
  Structure s;
  s.n = m.domain_size();
  for (const auto& [name, table] : m.predicates()) s.predicates[name] = table.values;
  for (const auto& [name, table] : m.functions()) s.functions[name] = table.values;
  return s;
}

// ---- propositional truth tables ---------------------------------------------

inline bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return true;
    case Formula::Kind::Atom: return f.args().empty();
    case Formula::Kind::Equality:
    case Formula::Kind::Quantified: return false;
    case Formula::Kind::Negation: return is_propositional(f.body());
    case Formula::Kind::Binary: return is_propositional(f.lhs()) && is_propositional(f.rhs());
  }
  return false;
}

/// Every assignment to the atoms of `formulas`, as one-element structures.
inline bool for_each_assignment(const std::vector<Formula>& formulas, const std::function<bool(const Structure&)>& visit) {
  return for_each_structure(signature_of(formulas), 1, visit);
}

/// premises |= goal; without a goal, "premises are unsatisfiable".
inline bool tt_entails(const std::vector<Formula>& premises, const std::optional<Formula>& goal) {
  std::vector<Formula> all = premises;
  if (goal) all.push_back(*goal);
  bool counterexample = for_each_assignment(all, [&](const Structure& s) {
    for (const auto& p : premises)
      if (!holds(s, p)) return false;
    return !goal || !holds(s, *goal);
  });
  return !counterexample;
}

/// Minimal subsets of t's premises that entail its conjecture, by truth tables.
inline std::set<std::set<std::string>> tt_minima(const proofscope::Theory& t) {
  auto premises = t.premises();
  std::optional<Formula> goal;
  if (t.conjecture()) goal = t.conjecture()->formula;
  std::size_t n = premises.size();
  std::vector<bool> proves(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < proves.size(); ++mask) {
    std::vector<Formula> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(premises[i]->formula);
    proves[mask] = tt_entails(subset, goal);
  }
  std::set<std::set<std::string>> out;
  for (std::size_t mask = 0; mask < proves.size(); ++mask) {
    if (!proves[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i & 1) && proves[mask & ~(std::size_t{1} << i)]) minimal = false;
    if (!minimal) continue;
    std::set<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) names.insert(premises[i]->name);
    out.insert(names);
  }
  return out;
}

}  // namespace oracle
