#include "proofscope/logic.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

namespace proofscope {

Term Term::variable(std::string name) {
  return Term{Kind::Variable, std::move(name), {}};
}

Term Term::function(std::string name, std::vector<Term> args) {
  return Term{Kind::Function, std::move(name), std::move(args)};
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.name != b.name) return a.name < b.name;
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

struct Formula::Node {
  Kind kind;
  bool value = false;
  std::string predicate;
  std::vector<Term> args;
  Connective op = Connective::And;
  Quantifier quantifier = Quantifier::Forall;
  std::vector<std::string> variables;
  std::vector<Formula> children;
};

Formula Formula::truth(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->predicate = std::move(predicate);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::equality(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Equality;
  n->predicate = kEqualityPredicate;
  n->args = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::negation(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negation;
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::binary(Connective op, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::quantified(Quantifier q, std::vector<std::string> variables, Formula body) {
  if (variables.empty()) throw std::invalid_argument("quantifier without variables");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quantified;
  n->quantifier = q;
  n->variables = std::move(variables);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::truth_value() const { return node_->value; }
const std::string& Formula::predicate() const { return node_->predicate; }
const std::vector<Term>& Formula::args() const { return node_->args; }
Connective Formula::connective() const { return node_->op; }
Quantifier Formula::quantifier() const { return node_->quantifier; }
const std::vector<std::string>& Formula::variables() const { return node_->variables; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const Formula& Formula::body() const { return node_->children.at(0); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Formula::Kind::Constant:
      return x.value == y.value;
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      return x.predicate == y.predicate && x.args == y.args;
    case Formula::Kind::Negation:
      return x.children[0] == y.children[0];
    case Formula::Kind::Binary:
      return x.op == y.op && x.children[0] == y.children[0] && x.children[1] == y.children[1];
    case Formula::Kind::Quantified:
      return x.quantifier == y.quantifier && x.variables == y.variables &&
             x.children[0] == y.children[0];
  }
  return false;
}

Formula negate(const Formula& f) { return Formula::negation(f); }

namespace {

void term_variables(const Term& t, const std::set<std::string>& bound,
                    std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (!bound.contains(t.name) && std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) term_variables(a, bound, out);
}

void formula_variables(const Formula& f, std::set<std::string>& bound,
                       std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return;
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      for (const auto& a : f.args()) term_variables(a, bound, out);
      return;
    case Formula::Kind::Negation:
      formula_variables(f.body(), bound, out);
      return;
    case Formula::Kind::Binary:
      formula_variables(f.lhs(), bound, out);
      formula_variables(f.rhs(), bound, out);
      return;
    case Formula::Kind::Quantified: {
      std::vector<std::string> added;
      for (const auto& v : f.variables())
        if (bound.insert(v).second) added.push_back(v);
      formula_variables(f.body(), bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
  }
}

std::vector<std::string> ordered_free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  formula_variables(f, bound, out);
  return out;
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  auto v = ordered_free_variables(f);
  return {v.begin(), v.end()};
}

Formula universal_closure(const Formula& f) {
  auto vars = ordered_free_variables(f);
  if (vars.empty()) return f;
  return Formula::quantified(Quantifier::Forall, std::move(vars), f);
}

// ---------------------------------------------------------------------------
// Clausification

namespace {

struct Nnf {
  enum class Kind : std::uint8_t { True, False, Lit, And, Or };
  Kind kind = Kind::True;
  Literal lit;
  std::vector<Nnf> kids;
};

Nnf nnf_const(bool v) { return Nnf{v ? Nnf::Kind::True : Nnf::Kind::False, {}, {}}; }

Nnf nnf_join(Nnf::Kind k, Nnf a, Nnf b) {
  Nnf n{k, {}, {}};
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return n;
}

class Clausifier {
 public:
  explicit Clausifier(std::set<std::string> taken) : taken_(std::move(taken)) {}

  Nnf convert(const Formula& f) {
    std::map<std::string, Term> env;
    std::vector<Term> universals;
    return nnf(f, true, env, universals);
  }

 private:
  Term substitute(const Term& t, const std::map<std::string, Term>& env) {
    if (t.is_variable()) {
      auto it = env.find(t.name);
      if (it == env.end()) throw std::invalid_argument("clausify: free variable " + t.name);
      return it->second;
    }
    Term r = Term::function(t.name);
    r.args.reserve(t.args.size());
    for (const auto& a : t.args) r.args.push_back(substitute(a, env));
    return r;
  }

  std::string fresh_skolem() {
    for (;;) {
      std::string name = "sk" + std::to_string(++skolem_counter_);
      if (!taken_.contains(name)) return name;
    }
  }

  Nnf nnf(const Formula& f, bool pol, std::map<std::string, Term>& env,
          std::vector<Term>& universals) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Constant:
        return nnf_const(f.truth_value() == pol);
      case K::Atom:
      case K::Equality: {
        Nnf n{Nnf::Kind::Lit, {}, {}};
        n.lit.positive = pol;
        n.lit.predicate = f.predicate();
        for (const auto& a : f.args()) n.lit.args.push_back(substitute(a, env));
        return n;
      }
      case K::Negation:
        return nnf(f.body(), !pol, env, universals);
      case K::Binary: {
        const auto& a = f.lhs();
        const auto& b = f.rhs();
        auto conj = [&](bool pa, bool pb) {
          return nnf_join(Nnf::Kind::And, nnf(a, pa, env, universals), nnf(b, pb, env, universals));
        };
        auto disj = [&](bool pa, bool pb) {
          return nnf_join(Nnf::Kind::Or, nnf(a, pa, env, universals), nnf(b, pb, env, universals));
        };
        switch (f.connective()) {
          case Connective::And:
            return pol ? conj(true, true) : disj(false, false);
          case Connective::Or:
            return pol ? disj(true, true) : conj(false, false);
          case Connective::Implies:
            return pol ? disj(false, true) : conj(true, false);
          case Connective::ReverseImplies:
            return pol ? disj(true, false) : conj(false, true);
          case Connective::Nor:
            return pol ? conj(false, false) : disj(true, true);
          case Connective::Nand:
            return pol ? disj(false, false) : conj(true, true);
          case Connective::Iff:
          case Connective::Xor: {
            bool iff = (f.connective() == Connective::Iff) == pol;
            if (iff) {
              auto l = disj(false, true);
              auto r = disj(true, false);
              return nnf_join(Nnf::Kind::And, std::move(l), std::move(r));
            }
            auto l = conj(true, false);
            auto r = conj(false, true);
            return nnf_join(Nnf::Kind::Or, std::move(l), std::move(r));
          }
        }
        break;
      }
      case K::Quantified: {
        bool universal = (f.quantifier() == Quantifier::Forall) == pol;
        std::vector<std::pair<std::string, std::optional<Term>>> saved;
        std::size_t pushed = 0;
        for (const auto& v : f.variables()) {
          auto it = env.find(v);
          saved.emplace_back(v, it == env.end() ? std::nullopt : std::optional<Term>(it->second));
          if (universal) {
            Term var = Term::variable("V" + std::to_string(++variable_counter_));
            env[v] = var;
            universals.push_back(var);
            ++pushed;
          } else {
            env[v] = Term::function(fresh_skolem(), universals);
          }
        }
        Nnf r = nnf(f.body(), pol, env, universals);
        universals.resize(universals.size() - pushed);
        for (auto& [name, old] : saved) {
          if (old) env[name] = *old;
          else env.erase(name);
        }
        return r;
      }
    }
    throw std::logic_error("unreachable formula kind");
  }

  std::set<std::string> taken_;
  int skolem_counter_ = 0;
  int variable_counter_ = 0;
};

bool complementary(const Literal& a, const Literal& b) {
  return a.positive != b.positive && a.predicate == b.predicate && a.args == b.args;
}

bool trivially_true(const Literal& l) {
  return l.positive && l.is_equality() && l.args[0] == l.args[1];
}

// Adds `l` to `c`; false if the clause became a tautology.
bool add_literal(std::vector<Literal>& c, const Literal& l) {
  if (trivially_true(l)) return false;
  for (const auto& x : c) {
    if (x == l) return true;
    if (complementary(x, l)) return false;
  }
  c.push_back(l);
  return true;
}

using RawClauses = std::vector<std::vector<Literal>>;

RawClauses cnf(const Nnf& n) {
  switch (n.kind) {
    case Nnf::Kind::True:
      return {};
    case Nnf::Kind::False:
      return {{}};
    case Nnf::Kind::Lit:
      if (trivially_true(n.lit)) return {};
      if (n.lit.is_equality() && !n.lit.positive && n.lit.args[0] == n.lit.args[1]) return {{}};
      return {{n.lit}};
    case Nnf::Kind::And: {
      RawClauses out;
      for (const auto& k : n.kids) {
        auto part = cnf(k);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
      }
      return out;
    }
    case Nnf::Kind::Or: {
      RawClauses acc = {{}};
      for (const auto& k : n.kids) {
        auto part = cnf(k);
        RawClauses next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            std::vector<Literal> merged = a;
            bool keep = true;
            for (const auto& l : b) {
              if (!add_literal(merged, l)) {
                keep = false;
                break;
              }
            }
            if (keep) next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

void rename_term(Term& t, std::map<std::string, std::string>& names) {
  if (t.is_variable()) {
    auto [it, inserted] = names.try_emplace(t.name, "X" + std::to_string(names.size() + 1));
    t.name = it->second;
    return;
  }
  for (auto& a : t.args) rename_term(a, names);
}

void symbol_names(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) return;
  out.insert(t.name);
  for (const auto& a : t.args) symbol_names(a, out);
}

void symbol_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return;
    case Formula::Kind::Atom:
      out.insert(f.predicate());
      [[fallthrough]];
    case Formula::Kind::Equality:
      for (const auto& a : f.args()) symbol_names(a, out);
      return;
    case Formula::Kind::Negation:
    case Formula::Kind::Quantified:
      symbol_names(f.body(), out);
      return;
    case Formula::Kind::Binary:
      symbol_names(f.lhs(), out);
      symbol_names(f.rhs(), out);
      return;
  }
}

}  // namespace

ClauseSet clausify(const std::vector<NamedFormula>& named) {
  std::set<std::string> taken;
  for (const auto& nf : named) symbol_names(nf.formula, taken);
  Clausifier clausifier(std::move(taken));
  ClauseSet out;
  for (const auto& nf : named) {
    Nnf n = clausifier.convert(nf.formula);
    for (auto& lits : cnf(n)) {
      Clause c;
      std::map<std::string, std::string> names;
      for (auto& l : lits)
        for (auto& a : l.args) rename_term(a, names);
      c.literals = std::move(lits);
      c.origins = {nf.name};
      out.push_back(std::move(c));
    }
  }
  return out;
}

Formula clause_formula(const Clause& clause) {
  if (clause.literals.empty()) return Formula::truth(false);
  auto lit = [](const Literal& l) {
    Formula a = l.is_equality() ? Formula::equality(l.args[0], l.args[1])
                                : Formula::atom(l.predicate, l.args);
    return l.positive ? a : Formula::negation(a);
  };
  Formula f = lit(clause.literals[0]);
  for (std::size_t i = 1; i < clause.literals.size(); ++i)
    f = Formula::binary(Connective::Or, f, lit(clause.literals[i]));
  return universal_closure(f);
}

// ---------------------------------------------------------------------------
// Interpretations

Interpretation::Interpretation(int domain_size) : domain_size_(domain_size) {
  if (domain_size < 1) throw std::invalid_argument("domain size must be positive");
}

namespace {

std::size_t table_size(int domain, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain);
  return n;
}

}  // namespace

void Interpretation::set_predicate(const std::string& name, int arity, std::vector<int> values) {
  if (values.size() != table_size(domain_size_, arity))
    throw std::invalid_argument("predicate table for " + name + " has wrong size");
  predicates_[name] = Table{arity, std::move(values)};
}

void Interpretation::set_function(const std::string& name, int arity, std::vector<int> values) {
  if (values.size() != table_size(domain_size_, arity))
    throw std::invalid_argument("function table for " + name + " has wrong size");
  for (int v : values)
    if (v < 0 || v >= domain_size_)
      throw std::invalid_argument("function table for " + name + " leaves the domain");
  functions_[name] = Table{arity, std::move(values)};
}

std::size_t Interpretation::index_of(std::span<const int> args) const {
  std::size_t idx = 0;
  for (int a : args) idx = idx * static_cast<std::size_t>(domain_size_) + static_cast<std::size_t>(a);
  return idx;
}

bool Interpretation::predicate_value(const std::string& name, std::span<const int> args) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end() || it->second.arity != static_cast<int>(args.size()))
    throw MissingSymbol(name + "/" + std::to_string(args.size()));
  return it->second.values[index_of(args)] != 0;
}

int Interpretation::function_value(const std::string& name, std::span<const int> args) const {
  auto it = functions_.find(name);
  if (it == functions_.end() || it->second.arity != static_cast<int>(args.size()))
    throw MissingSymbol(name + "/" + std::to_string(args.size()));
  return it->second.values[index_of(args)];
}

namespace {

void for_each_tuple(int domain, int arity, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
  for (;;) {
    fn(tuple);
    int i = arity - 1;
    while (i >= 0 && ++tuple[static_cast<std::size_t>(i)] == domain) tuple[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

std::string tuple_text(const std::string& name, const std::vector<int>& t) {
  if (t.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace

std::string Interpretation::to_string() const {
  std::ostringstream os;
  os << "domain size " << domain_size_ << "\n";
  for (const auto& [name, table] : functions_) {
    for_each_tuple(domain_size_, table.arity, [&](const std::vector<int>& t) {
      os << "  " << tuple_text(name, t) << " = " << table.values[index_of(t)] << "\n";
    });
  }
  for (const auto& [name, table] : predicates_) {
    for_each_tuple(domain_size_, table.arity, [&](const std::vector<int>& t) {
      os << "  " << (table.values[index_of(t)] ? "" : "~") << tuple_text(name, t) << "\n";
    });
  }
  return os.str();
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Interpretation& m) : m_(m) {}

  int term(const Term& t) {
    if (t.is_variable()) {
      auto it = env_.find(t.name);
      if (it == env_.end() || it->second.empty())
        throw std::invalid_argument("evaluate: unbound variable " + t.name);
      return it->second.back();
    }
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(term(a));
    return m_.function_value(t.name, args);
  }

  bool formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Constant:
        return f.truth_value();
      case K::Atom: {
        std::vector<int> args;
        for (const auto& a : f.args()) args.push_back(term(a));
        return m_.predicate_value(f.predicate(), args);
      }
      case K::Equality:
        return term(f.args()[0]) == term(f.args()[1]);
      case K::Negation:
        return !formula(f.body());
      case K::Binary: {
        bool a = formula(f.lhs());
        switch (f.connective()) {
          case Connective::And:
            return a && formula(f.rhs());
          case Connective::Or:
            return a || formula(f.rhs());
          case Connective::Implies:
            return !a || formula(f.rhs());
          case Connective::ReverseImplies:
            return a || !formula(f.rhs());
          case Connective::Iff:
            return a == formula(f.rhs());
          case Connective::Xor:
            return a != formula(f.rhs());
          case Connective::Nor:
            return !(a || formula(f.rhs()));
          case Connective::Nand:
            return !(a && formula(f.rhs()));
        }
        return false;
      }
      case K::Quantified:
        return quantified(f, 0);
    }
    return false;
  }

 private:
  bool quantified(const Formula& f, std::size_t i) {
    if (i == f.variables().size()) return formula(f.body());
    bool universal = f.quantifier() == Quantifier::Forall;
    env_[f.variables()[i]].push_back(0);
    bool result = universal;
    for (int d = 0; d < m_.domain_size(); ++d) {
      env_[f.variables()[i]].back() = d;
      bool v = quantified(f, i + 1);
      if (universal && !v) {
        result = false;
        break;
      }
      if (!universal && v) {
        result = true;
        break;
      }
    }
    env_[f.variables()[i]].pop_back();
    return result;
  }

  const Interpretation& m_;
  std::map<std::string, std::vector<int>> env_;
};

void collect_term_symbols(const Term& t, SymbolArities& out) {
  if (t.is_variable()) return;
  out.functions.emplace(t.name, static_cast<int>(t.args.size()));
  for (const auto& a : t.args) collect_term_symbols(a, out);
}

}  // namespace

bool evaluate(const Interpretation& m, const Formula& f) { return Evaluator(m).formula(f); }

void collect_symbols(const Formula& f, SymbolArities& out) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return;
    case Formula::Kind::Atom:
      out.predicates.emplace(f.predicate(), static_cast<int>(f.args().size()));
      [[fallthrough]];
    case Formula::Kind::Equality:
      for (const auto& a : f.args()) collect_term_symbols(a, out);
      return;
    case Formula::Kind::Negation:
    case Formula::Kind::Quantified:
      collect_symbols(f.body(), out);
      return;
    case Formula::Kind::Binary:
      collect_symbols(f.lhs(), out);
      collect_symbols(f.rhs(), out);
      return;
  }
}

void collect_symbols(const Clause& c, SymbolArities& out) {
  for (const auto& l : c.literals) {
    if (!l.is_equality()) out.predicates.emplace(l.predicate, static_cast<int>(l.args.size()));
    for (const auto& a : l.args) collect_term_symbols(a, out);
  }
}

}  // namespace proofscope
