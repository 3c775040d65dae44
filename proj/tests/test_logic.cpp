#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "proofscope/logic.hpp"
#include "proofscope/model_finder.hpp"
#include "test_support.hpp"

using namespace proofscope;

namespace {

Formula formula(const std::string& text) { return testing::parse("fof(f, axiom, " + text + ").").formulas()[0].formula; }

std::vector<Formula> clause_formulas(const ClauseSet& clauses) {
  std::vector<Formula> out;
  for (const auto& c : clauses) out.push_back(clause_formula(c));
  return out;
}

}  // namespace

TEST_SUITE("logic_core") {

TEST_CASE("negate") {
  CHECK(negate(formula("p")) == formula("~p"));
  CHECK(negate(formula("! [X]: p(X)")) == formula("~(! [X]: p(X))"));
  CHECK(negate(Formula::truth(true)) == Formula::negation(Formula::truth(true)));
}

TEST_CASE("free variables") {
  auto x = Term::variable("X");
  auto y = Term::variable("Y");
  CHECK(free_variables(Formula::atom("p", {x})) == std::set<std::string>{"X"});
  CHECK(free_variables(Formula::quantified(Quantifier::Forall, {"X"}, Formula::atom("p", {x}))).empty());
  CHECK(free_variables(Formula::quantified(Quantifier::Forall, {"X"}, Formula::atom("p", {x, y}))) ==
        std::set<std::string>{"Y"});
}

TEST_CASE("clausify examples") {
  auto cs = clausify({{"a1", formula("p & q")}});
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].literals == std::vector<Literal>{{true, "p", {}}});
  CHECK(cs[1].literals == std::vector<Literal>{{true, "q", {}}});
  CHECK(cs[0].origins == std::set<std::string>{"a1"});

  auto sk = clausify({{"a1", formula("? [X]: p(X)")}});
  REQUIRE(sk.size() == 1);
  CHECK(sk[0].literals == std::vector<Literal>{{true, "p", {Term::function("sk1")}}});

  auto taken = clausify({{"a1", formula("? [X]: p(X, sk1)")}});
  CHECK(taken[0].literals[0].args[0] == Term::function("sk2"));

  auto two = clausify({{"a1", formula("! [X]: (p(X) | q(X))")}, {"a2", formula("~p(c)")}});
  REQUIRE(two.size() == 2);
  CHECK(two[0].origins == std::set<std::string>{"a1"});
  CHECK(two[1].origins == std::set<std::string>{"a2"});
}

TEST_CASE("clausification preserves truth tables of propositional formulas") {
  std::mt19937_64 rng(11);
  for (int run = 0; run < 300; ++run) {
    Formula f = testing::random_prop(rng, 4, 4);
    auto clauses = clause_formulas(clausify({{"f", f}}));
    CAPTURE(render_formula(f));
    oracle::for_each_assignment({f}, [&](const oracle::Structure& s) {
      bool all = true;
      for (const auto& c : clauses) all = all && oracle::holds(s, c);
      CHECK(all == oracle::holds(s, f));
      return false;
    });
  }
}

TEST_CASE("clausification is equisatisfiable on small first-order formulas") {
  const char* samples[] = {
      "! [X]: ? [Y]: (r(X, Y) & ~r(Y, X))",
      "? [X]: ! [Y]: (r(X, Y) <=> ~r(Y, Y))",
      "(! [X]: p(X)) <=> (? [Y]: ~q(Y))",
      "! [X]: (p(X) => ? [Y]: (f(Y) = X & p(Y)))",
      "~(! [X]: ? [Y]: X != Y) & (? [Z]: p(Z))",
      "! [X, Y]: (X = Y | (p(X) <~> p(Y)))",
      "? [X]: (p(X) & ! [Y]: (p(Y) => Y = X)) & p(a) & ~p(b)",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    Formula f = formula(text);
    auto clauses = clause_formulas(clausify({{"f", f}}));
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(n);
      CHECK(oracle::find_structure({f}, n).has_value() == oracle::find_structure(clauses, n).has_value());
    }
  }
}

TEST_CASE("evaluate agrees with the reference evaluator") {
  Interpretation one(1);
  one.set_predicate("p", 0, {1});
  CHECK(evaluate(one, formula("p")));
  Interpretation two(2);
  two.set_predicate("p", 1, {1, 0});
  CHECK_FALSE(evaluate(two, formula("! [X]: p(X)")));
  CHECK(evaluate(two, formula("? [X]: ? [Y]: X != Y")));
  CHECK_THROWS_AS(evaluate(two, formula("q")), MissingSymbol);

  const char* samples[] = {"! [X]: (p(X) => p(f(X)))", "? [X]: (f(X) = X & ~p(X))", "! [X, Y]: (f(X) = f(Y) => X = Y)",
                           "p(c) <~> ? [X]: ~p(f(f(X)))"};
  for (const char* text : samples) {
    Formula f = formula(text);
    for (int n = 1; n <= 3; ++n) {
      auto sig = oracle::signature_of({f});
      oracle::for_each_structure(sig, n, [&](const oracle::Structure& s) {
        Interpretation m(n);
        for (const auto& [name, values] : s.predicates) m.set_predicate(name, sig.predicates[name], values);
        for (const auto& [name, values] : s.functions) m.set_function(name, sig.functions[name], values);
        CHECK(evaluate(m, f) == oracle::holds(s, f));
        return false;
      });
    }
  }
}

}  // TEST_SUITE
