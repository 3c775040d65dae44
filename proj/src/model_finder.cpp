#include "proofscope/model_finder.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

#include "proofscope/dpll.hpp"

namespace proofscope {

std::string_view outcome_name(ModelOutcome::Kind kind) {
  switch (kind) {
    case ModelOutcome::Kind::ModelFound: return "ModelFound";
    case ModelOutcome::Kind::ExhaustedUpTo: return "ExhaustedUpTo";
    case ModelOutcome::Kind::ResourceOut: return "ResourceOut";
  }
  return "ResourceOut";
}

bool verify_model(const Interpretation& m, const std::vector<Formula>& formulas) {
  for (const auto& f : formulas)
    if (!evaluate(m, f)) return false;
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Symbol {
  std::string name;
  int arity = 0;
  bool predicate = false;
};

// Every argument is a clause-local variable index.
struct FlatLiteral {
  enum class Kind : std::uint8_t { Predicate, FunctionValue, VariableEq };
  Kind kind = Kind::Predicate;
  bool positive = true;
  int symbol = -1;
  std::vector<int> vars;
  int result = -1;  // FunctionValue: f(vars) = result; VariableEq: vars[0] = result
};

struct FlatClause {
  int variable_count = 0;
  std::vector<FlatLiteral> literals;
};

class Flattener {
 public:
  explicit Flattener(std::vector<Symbol>& symbols) : symbols_(symbols) {}

  FlatClause flatten(const Clause& c) {
    FlatClause out;
    vars_.clear();
    definitions_.clear();
    out_ = &out;
    for (const auto& l : c.literals) {
      if (!l.is_equality()) {
        FlatLiteral fl;
        fl.kind = FlatLiteral::Kind::Predicate;
        fl.positive = l.positive;
        fl.symbol = symbol_id(l.predicate, static_cast<int>(l.args.size()), true);
        for (const auto& a : l.args) fl.vars.push_back(term(a));
        out.literals.push_back(std::move(fl));
        continue;
      }
      const Term& s = l.args[0];
      const Term& t = l.args[1];
      FlatLiteral fl;
      fl.positive = l.positive;
      if (s.is_variable() && t.is_variable()) {
        fl.kind = FlatLiteral::Kind::VariableEq;
        fl.vars = {term(s)};
        fl.result = term(t);
      } else {
        const Term& app = s.is_variable() ? t : s;
        const Term& other = s.is_variable() ? s : t;
        fl.kind = FlatLiteral::Kind::FunctionValue;
        fl.symbol = symbol_id(app.name, static_cast<int>(app.args.size()), false);
        for (const auto& a : app.args) fl.vars.push_back(term(a));
        fl.result = term(other);
      }
      out.literals.push_back(std::move(fl));
    }
    out.variable_count = next_var_;
    next_var_ = 0;
    return out;
  }

 private:
  int symbol_id(const std::string& name, int arity, bool predicate) {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name && symbols_[i].predicate == predicate) {
        if (symbols_[i].arity != arity) throw std::invalid_argument("inconsistent arity for " + name);
        return static_cast<int>(i);
      }
    symbols_.push_back(Symbol{name, arity, predicate});
    return static_cast<int>(symbols_.size()) - 1;
  }

  int term(const Term& t) {
    if (t.is_variable()) {
      auto [it, inserted] = vars_.try_emplace(t.name, next_var_);
      if (inserted) ++next_var_;
      return it->second;
    }
    std::vector<int> args;
    for (const auto& a : t.args) args.push_back(term(a));
    int f = symbol_id(t.name, static_cast<int>(t.args.size()), false);
    auto key = std::make_pair(f, args);
    if (auto it = definitions_.find(key); it != definitions_.end()) return it->second;
    int v = next_var_++;
    definitions_.emplace(key, v);
    FlatLiteral def;
    def.kind = FlatLiteral::Kind::FunctionValue;
    def.positive = false;
    def.symbol = f;
    def.vars = std::move(args);
    def.result = v;
    out_->literals.push_back(std::move(def));
    return v;
  }

  std::vector<Symbol>& symbols_;
  std::map<std::string, int> vars_;
  std::map<std::pair<int, std::vector<int>>, int> definitions_;
  FlatClause* out_ = nullptr;
  int next_var_ = 0;
};

std::size_t power(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

class Grounding {
 public:
  Grounding(const std::vector<Symbol>& symbols, int n) : symbols_(symbols), n_(n) {
    for (const auto& s : symbols_) {
      offsets_.push_back(solver_.variable_count() + 1);
      std::size_t count = power(n, s.arity) * (s.predicate ? 1 : static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < count; ++i) solver_.new_variable();
    }
  }

  PropLiteral atom(int symbol, const std::vector<int>& args, int value) const {
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a);
    if (!symbols_[static_cast<std::size_t>(symbol)].predicate)
      idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(value);
    return offsets_[static_cast<std::size_t>(symbol)] + static_cast<PropLiteral>(idx);
  }

  // False when the deadline passed.
  bool add_clause(const FlatClause& c, Clock::time_point deadline) {
    std::vector<int> assignment(static_cast<std::size_t>(c.variable_count), 0);
    std::vector<PropLiteral> ground;
    std::vector<int> args;
    std::uint64_t count = 0;
    for (;;) {
      if ((++count & 0xfff) == 0 && Clock::now() > deadline) return false;
      ground.clear();
      bool satisfied = false;
      for (const auto& l : c.literals) {
        if (l.kind == FlatLiteral::Kind::VariableEq) {
          bool eq = assignment[static_cast<std::size_t>(l.vars[0])] ==
                    assignment[static_cast<std::size_t>(l.result)];
          if (eq == l.positive) {
            satisfied = true;
            break;
          }
          continue;
        }
        args.clear();
        for (int v : l.vars) args.push_back(assignment[static_cast<std::size_t>(v)]);
        int value = l.kind == FlatLiteral::Kind::FunctionValue
                        ? assignment[static_cast<std::size_t>(l.result)] : 0;
        PropLiteral p = atom(l.symbol, args, value);
        ground.push_back(l.positive ? p : -p);
      }
      if (!satisfied) solver_.add_clause(ground);
      int i = c.variable_count - 1;
      while (i >= 0 && ++assignment[static_cast<std::size_t>(i)] == n_) assignment[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) return true;
    }
  }

  void add_function_axioms(std::optional<int> first_constant) {
    for (std::size_t s = 0; s < symbols_.size(); ++s) {
      if (symbols_[s].predicate) continue;
      int arity = symbols_[s].arity;
      std::vector<int> args(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<PropLiteral> total;
        for (int e = 0; e < n_; ++e) total.push_back(atom(static_cast<int>(s), args, e));
        solver_.add_clause(total);
        for (int a = 0; a < n_; ++a)
          for (int b = a + 1; b < n_; ++b) solver_.add_clause({-total[static_cast<std::size_t>(a)], -total[static_cast<std::size_t>(b)]});
        int i = arity - 1;
        while (i >= 0 && ++args[static_cast<std::size_t>(i)] == n_) args[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
      }
    }
    if (first_constant) solver_.add_clause({atom(*first_constant, {}, 0)});
  }

  Dpll& solver() { return solver_; }

  Interpretation decode() const {
    Interpretation m(n_);
    for (std::size_t s = 0; s < symbols_.size(); ++s) {
      const auto& sym = symbols_[s];
      std::size_t rows = power(n_, sym.arity);
      std::vector<int> values(rows, 0);
      for (std::size_t r = 0; r < rows; ++r) {
        if (sym.predicate) {
          values[r] = solver_.value(offsets_[s] + static_cast<PropLiteral>(r)) ? 1 : 0;
        } else {
          for (int e = 0; e < n_; ++e)
            if (solver_.value(offsets_[s] + static_cast<PropLiteral>(r * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e))))
              values[r] = e;
        }
      }
      if (sym.predicate) m.set_predicate(sym.name, sym.arity, std::move(values));
      else m.set_function(sym.name, sym.arity, std::move(values));
    }
    return m;
  }

 private:
  const std::vector<Symbol>& symbols_;
  int n_;
  Dpll solver_;
  std::vector<PropLiteral> offsets_;
};

}  // namespace

ModelOutcome find_model(const std::vector<NamedFormula>& formulas, const ModelLimits& limits) {
  if (limits.max_domain_size < 1) throw std::invalid_argument("max_domain_size must be at least 1");
  for (const auto& nf : formulas)
    if (!is_closed(nf.formula)) throw std::invalid_argument("find_model: formula " + nf.name + " is not closed");

  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.wall_clock_budget));
  ClauseSet clauses = clausify(formulas);

  std::vector<Symbol> symbols;
  Flattener flattener(symbols);
  std::vector<FlatClause> flat;
  for (const auto& c : clauses) flat.push_back(flattener.flatten(c));

  std::optional<int> first_constant;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (!symbols[i].predicate && symbols[i].arity == 0) {
      first_constant = static_cast<int>(i);
      break;
    }

  // Symbols that vanished during clausification still need tables for verification.
  SymbolArities input_symbols;
  for (const auto& nf : formulas) collect_symbols(nf.formula, input_symbols);

  std::vector<Formula> originals;
  for (const auto& nf : formulas) originals.push_back(nf.formula);

  ModelOutcome out;
  for (int n = 1; n <= limits.max_domain_size; ++n) {
    Grounding g(symbols, n);
    bool in_time = true;
    for (const auto& c : flat) {
      if (!g.add_clause(c, deadline)) {
        in_time = false;
        break;
      }
    }
    if (!in_time) {
      out.kind = ModelOutcome::Kind::ResourceOut;
      return out;
    }
    g.add_function_axioms(first_constant);
    auto r = g.solver().solve(deadline);
    if (r == Dpll::Result::Interrupted) {
      out.kind = ModelOutcome::Kind::ResourceOut;
      return out;
    }
    if (r == Dpll::Result::Unsatisfiable) {
      out.exhausted_size = n;
      continue;
    }
    Interpretation m = g.decode();
    for (const auto& [name, arity] : input_symbols.predicates)
      if (!m.predicates().contains(name)) m.set_predicate(name, arity, std::vector<int>(power(n, arity), 0));
    for (const auto& [name, arity] : input_symbols.functions)
      if (!m.functions().contains(name)) m.set_function(name, arity, std::vector<int>(power(n, arity), 0));
    if (!verify_model(m, originals))
      throw std::logic_error("model finder produced an interpretation that fails verification");
    out.kind = ModelOutcome::Kind::ModelFound;
    out.model = std::move(m);
    return out;
  }
  out.kind = ModelOutcome::Kind::ExhaustedUpTo;
  out.exhausted_size = limits.max_domain_size;
  return out;
}

}  // namespace proofscope
