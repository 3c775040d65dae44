#pragma once

// First-order terms, formulas, clauses and finite interpretations.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace proofscope {

/// Name of the built-in equality predicate inside clauses.
inline constexpr const char* kEqualityPredicate = "=";

struct Term {
  enum class Kind : std::uint8_t { Variable, Function };

  Kind kind = Kind::Function;
  std::string name;
  std::vector<Term> args;

  static Term variable(std::string name);
  static Term function(std::string name, std::vector<Term> args = {});

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);
};

enum class Connective : std::uint8_t { And, Or, Implies, ReverseImplies, Iff, Xor, Nor, Nand };
enum class Quantifier : std::uint8_t { Forall, Exists };

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { Constant, Atom, Equality, Negation, Binary, Quantified };

  static Formula truth(bool value);
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equality(Term lhs, Term rhs);
  static Formula negation(Formula body);
  static Formula binary(Connective op, Formula lhs, Formula rhs);
  static Formula quantified(Quantifier q, std::vector<std::string> variables, Formula body);

  Kind kind() const;
  bool truth_value() const;
  const std::string& predicate() const;
  /// Atom arguments, or {lhs, rhs} for an equality.
  const std::vector<Term>& args() const;
  Connective connective() const;
  Quantifier quantifier() const;
  const std::vector<std::string>& variables() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Body of a negation or quantified formula.
  const Formula& body() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct NamedFormula {
  std::string name;
  Formula formula;
};

/// Wraps `f` in a negation node. No simplification.
Formula negate(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

inline bool is_closed(const Formula& f) { return free_variables(f).empty(); }

/// Universal closure over the free variables of `f`, in first-occurrence order.
Formula universal_closure(const Formula& f);

struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;

  bool is_equality() const { return predicate == kEqualityPredicate; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;
  std::set<std::string> origins;

  bool empty() const { return literals.empty(); }
};

using ClauseSet = std::vector<Clause>;

/// NNF, outer skolemization and naive CNF distribution. Every clause carries
/// the singleton name of the formula it came from. Skolem symbols are named
/// sk1, sk2, ... skipping any name already present in the input.
ClauseSet clausify(const std::vector<NamedFormula>& named);

/// Clause read back as a universally closed disjunction.
Formula clause_formula(const Clause& clause);

class MissingSymbol : public std::runtime_error {
 public:
  explicit MissingSymbol(const std::string& symbol)
      : std::runtime_error("symbol not covered by interpretation: " + symbol), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Finite interpretation over {0, ..., domain_size - 1}. Tables are indexed in
/// mixed radix with the first argument most significant.
class Interpretation {
 public:
  struct Table {
    int arity = 0;
    std::vector<int> values;
  };

  explicit Interpretation(int domain_size);

  int domain_size() const { return domain_size_; }

  void set_predicate(const std::string& name, int arity, std::vector<int> values);
  void set_function(const std::string& name, int arity, std::vector<int> values);

  bool predicate_value(const std::string& name, std::span<const int> args) const;
  int function_value(const std::string& name, std::span<const int> args) const;

  const std::map<std::string, Table>& predicates() const { return predicates_; }
  const std::map<std::string, Table>& functions() const { return functions_; }

  std::size_t index_of(std::span<const int> args) const;

  /// Stable text rendering: domain size, then function tables, then predicate tables.
  std::string to_string() const;

 private:
  int domain_size_;
  std::map<std::string, Table> predicates_;
  std::map<std::string, Table> functions_;
};

/// Tarskian truth of a closed formula. Throws MissingSymbol.
bool evaluate(const Interpretation& m, const Formula& f);

/// Collects predicate and function symbols with arities.
struct SymbolArities {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;
};
void collect_symbols(const Formula& f, SymbolArities& out);
void collect_symbols(const Clause& c, SymbolArities& out);

}  // namespace proofscope
