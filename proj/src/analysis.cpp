#include "proofscope/analysis.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

namespace proofscope {

// ---- queries --------------------------------------------------------------

Theory Query::theory() const {
  std::vector<AnnotatedFormula> formulas = premises;
  if (goal) {
    AnnotatedFormula g = *goal;
    g.role = Role::Conjecture;
    formulas.push_back(std::move(g));
  }
  return Theory(std::move(formulas), "<query>");
}

std::string Query::key() const {
  std::vector<std::string> parts;
  parts.reserve(premises.size());
  for (const auto& p : premises) parts.push_back(p.name + ":" + render_formula(p.formula));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + "\n";
  key += goal ? "|- " + goal->name + ":" + render_formula(goal->formula) : "|- $false";
  return key;
}

Query make_query(const Theory& t, const PremiseSet& subset) {
  Query q;
  for (const auto* p : t.premises())
    if (subset.contains(p->name)) q.premises.push_back(*p);
  if (const auto* c = t.conjecture()) q.goal = *c;
  return q;
}

std::vector<std::string> in_declaration_order(const Theory& t, const PremiseSet& names) {
  std::vector<std::string> out;
  for (const auto* p : t.premises())
    if (names.contains(p->name)) out.push_back(p->name);
  return out;
}

PremiseSet all_premises(const Theory& t) {
  PremiseSet out;
  for (const auto* p : t.premises()) out.insert(p->name);
  return out;
}

// ---- judge ----------------------------------------------------------------

Judge::Judge(std::vector<std::shared_ptr<const Engine>> engines, JudgeOptions options)
    : engines_(std::move(engines)), options_(options) {
  if (engines_.empty()) throw std::invalid_argument("at least one engine is required");
  if (options_.timeout <= 0) throw std::invalid_argument("timeout must be positive");
  if (options_.parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  for (const auto& e : engines_)
    if (e->finds_models() && !e->proves()) order_.push_back(e.get());
  for (const auto& e : engines_)
    if (e->proves()) order_.push_back(e.get());
}

const Engine& Judge::prover() const {
  for (const auto& e : engines_)
    if (e->proves()) return *e;
  throw std::invalid_argument("no engine with the proves capability is configured");
}

const Engine* Judge::model_finder() const {
  for (const auto& e : engines_)
    if (e->finds_models()) return e.get();
  return nullptr;
}

EngineVerdict Judge::run(const Engine& engine, const Query& q) {
  ++engine_calls_;
  return engine.run(q.theory(), options_.timeout);
}

Entailment Judge::decide_uncached(const Query& q) {
  std::vector<Entailment> seen;
  for (const Engine* e : order_) {
    Entailment verdict = classify(run(*e, q).status, q.kind());
    if (!options_.cross_check && verdict != Entailment::Undetermined) return verdict;
    seen.push_back(verdict);
  }
  return combine(seen);
}

Entailment Judge::decide(const Query& q, bool use_cache) {
  if (!use_cache) return decide_uncached(q);
  std::string key = q.key();
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Entailment e = decide_uncached(q);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::move(key), e);
  return e;
}

std::vector<Entailment> Judge::decide_all(const std::vector<Query>& queries, bool use_cache) {
  std::vector<Entailment> out(queries.size(), Entailment::Undetermined);
  std::size_t workers = std::min(options_.parallelism, queries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) out[i] = decide(queries[i], use_cache);
    return out;
  }
  std::vector<std::exception_ptr> errors(queries.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < queries.size(); i = next++) {
        try {
          out[i] = decide(queries[i], use_cache);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---- reproving ------------------------------------------------------------

bool ReproveTrace::confirmed() const {
  if (stages.empty()) return false;
  SzsStatus s = stages.front().verdict.status;
  return s == SzsStatus::Theorem || s == SzsStatus::Unsatisfiable;
}

ReproveTrace syntactic_reprove(const Theory& t, Judge& judge) {
  const Engine& prover = judge.prover();
  ReproveTrace trace;
  PremiseSet current = all_premises(t);
  for (;;) {
    Query q = make_query(t, current);
    EngineVerdict v = judge.run(prover, q);
    Entailment e = classify(v.status, q.kind());
    PremiseSet used;
    std::set_intersection(v.used_premises.begin(), v.used_premises.end(), current.begin(), current.end(),
                          std::inserter(used, used.end()));
    bool informative = v.premise_info;
    trace.stages.push_back(ReproveStage{current, std::move(v)});
    if (e != Entailment::Proves || !informative) break;
    if (used == current) {
      trace.fixpoint_reached = true;
      break;
    }
    current = std::move(used);
  }
  return trace;
}

NeededClassification classify_needed(const Theory& t, const PremiseSet& start, Judge& judge) {
  NeededClassification cls;
  cls.analyzed = start;
  std::vector<std::string> order = in_declaration_order(t, start);
  std::vector<Query> queries;
  for (const auto& name : order) {
    PremiseSet rest = start;
    rest.erase(name);
    queries.push_back(make_query(t, rest));
  }
  std::vector<Entailment> verdicts = judge.decide_all(queries);
  for (std::size_t i = 0; i < order.size(); ++i) {
    switch (verdicts[i]) {
      case Entailment::Proves: cls.eliminable.insert(order[i]); break;
      case Entailment::DoesNotProve: cls.needed.insert(order[i]); break;
      case Entailment::Undetermined: cls.unknown.insert(order[i]); break;
    }
  }
  return cls;
}

std::string_view confirmation_name(Confirmation c) {
  switch (c) {
    case Confirmation::ConfirmedMinimum: return "ConfirmedMinimum";
    case Confirmation::NotSufficient: return "NotSufficient";
    case Confirmation::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

SemanticResult semantic_reprove(const Theory& t, const PremiseSet& start, Judge& judge) {
  SemanticResult r;
  r.classification = classify_needed(t, start, judge);
  r.t_star = r.classification.needed;
  r.t_star.insert(r.classification.unknown.begin(), r.classification.unknown.end());
  switch (judge.decide(make_query(t, r.t_star))) {
    case Entailment::Proves: r.confirmation = Confirmation::ConfirmedMinimum; break;
    case Entailment::DoesNotProve: r.confirmation = Confirmation::NotSufficient; break;
    case Entailment::Undetermined: r.confirmation = Confirmation::Undetermined; break;
  }
  return r;
}

// ---- minima ---------------------------------------------------------------

namespace {

// Subsets of a fixed, ordered universe.
using Bits = std::vector<bool>;

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

PremiseSet to_names(const Bits& bits, const std::vector<std::string>& universe) {
  PremiseSet out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out.insert(universe[i]);
  return out;
}

// Advances `c` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

MinimaReport enumerate_minima(const Theory& t, const NeededClassification& cls, Judge& judge,
                              std::size_t subset_budget) {
  std::size_t calls_before = judge.engine_calls();
  std::vector<std::string> universe = in_declaration_order(t, cls.analyzed);
  std::size_t m = universe.size();
  Bits base(m, false);
  std::vector<std::size_t> optional;  // indices of eliminable premises
  for (std::size_t i = 0; i < m; ++i) {
    if (cls.eliminable.contains(universe[i])) optional.push_back(i);
    else base[i] = true;
  }

  std::vector<Bits> insufficient;
  std::vector<Bits> sufficient;
  for (std::size_t i = 0; i < m; ++i) {
    Bits rest(m, true);
    rest[i] = false;
    if (cls.needed.contains(universe[i])) insufficient.push_back(rest);
    if (cls.eliminable.contains(universe[i])) sufficient.push_back(rest);
  }

  MinimaReport report;
  report.exhaustive = cls.unknown.empty();
  std::vector<Bits> found;
  std::size_t decided = 0;
  bool budget_hit = false;

  auto known_insufficient = [&](const Bits& s) {
    return std::any_of(insufficient.begin(), insufficient.end(), [&](const Bits& i) { return subset_of(s, i); });
  };
  auto known_sufficient = [&](const Bits& s) {
    return std::any_of(sufficient.begin(), sufficient.end(), [&](const Bits& x) { return subset_of(x, s); });
  };

  for (std::size_t k = 0; k <= optional.size() && !budget_hit; ++k) {
    std::vector<Bits> candidates;
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    bool any_unpruned_by_minima = false;
    do {
      Bits s = base;
      for (std::size_t i : comb) s[optional[i]] = true;
      if (std::any_of(found.begin(), found.end(), [&](const Bits& f) { return subset_of(f, s); })) continue;
      any_unpruned_by_minima = true;
      if (known_insufficient(s)) continue;
      candidates.push_back(std::move(s));
    } while (k > 0 && next_combination(comb, optional.size()));
    // Every larger candidate contains one of these, so it would be pruned too.
    if (!any_unpruned_by_minima) break;

    if (decided + candidates.size() > subset_budget) {
      candidates.resize(subset_budget - decided);
      budget_hit = true;
      report.exhaustive = false;
    }
    decided += candidates.size();

    std::vector<Query> queries;
    for (const auto& s : candidates) queries.push_back(make_query(t, to_names(s, universe)));
    std::vector<Entailment> verdicts = judge.decide_all(queries);

    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Bits& s = candidates[c];
      if (verdicts[c] == Entailment::DoesNotProve) {
        insufficient.push_back(s);
        continue;
      }
      if (verdicts[c] == Entailment::Undetermined) {
        report.exhaustive = false;
        continue;
      }
      sufficient.push_back(s);
      // Minimality: each single deletion must fail to prove.
      bool minimal = true;
      std::vector<Bits> open;
      for (std::size_t i = 0; i < m && minimal; ++i) {
        if (!s[i]) continue;
        Bits d = s;
        d[i] = false;
        if (known_insufficient(d)) continue;
        if (known_sufficient(d)) minimal = false;
        else open.push_back(std::move(d));
      }
      if (minimal && !open.empty()) {
        std::vector<Query> checks;
        for (const auto& d : open) checks.push_back(make_query(t, to_names(d, universe)));
        std::vector<Entailment> results = judge.decide_all(checks);
        for (std::size_t i = 0; i < open.size(); ++i) {
          if (results[i] == Entailment::DoesNotProve) insufficient.push_back(open[i]);
          else if (results[i] == Entailment::Proves) {
            sufficient.push_back(open[i]);
            minimal = false;
          } else {
            report.exhaustive = false;
            minimal = false;
          }
        }
      }
      if (minimal) found.push_back(s);
    }
  }

  for (const auto& f : found) report.minima.push_back(to_names(f, universe));
  report.budget_spent = judge.engine_calls() - calls_before;
  return report;
}

MinimaReport brute_force_minima(const Theory& t, Judge& judge) {
  std::vector<std::string> universe = in_declaration_order(t, all_premises(t));
  std::size_t n = universe.size();
  if (n > kBruteForceLimit)
    throw std::invalid_argument("brute-force minima is limited to " + std::to_string(kBruteForceLimit) + " premises");
  std::size_t calls_before = judge.engine_calls();
  std::size_t total = std::size_t{1} << n;
  std::vector<Query> queries;
  for (std::size_t mask = 0; mask < total; ++mask) {
    PremiseSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(universe[i]);
    queries.push_back(make_query(t, s));
  }
  std::vector<Entailment> verdicts = judge.decide_all(queries, /*use_cache=*/false);

  MinimaReport report;
  report.exhaustive = std::none_of(verdicts.begin(), verdicts.end(),
                                   [](Entailment e) { return e == Entailment::Undetermined; });
  std::vector<std::size_t> minimal;
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (verdicts[mask] != Entailment::Proves) continue;
    bool is_min = true;
    // Any proper submask that proves disqualifies the mask.
    for (std::size_t sub = (mask - 1) & mask; is_min; sub = (sub - 1) & mask) {
      if (sub != mask && verdicts[sub] == Entailment::Proves) is_min = false;
      if (sub == 0) break;
    }
    if (is_min) minimal.push_back(mask);
  }
  // Ascending size, then lexicographic by declaration order.
  auto lex_key = [&](std::size_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    return idx;
  };
  std::sort(minimal.begin(), minimal.end(), [&](std::size_t a, std::size_t b) {
    auto ka = lex_key(a);
    auto kb = lex_key(b);
    return ka.size() != kb.size() ? ka.size() < kb.size() : ka < kb;
  });
  for (std::size_t mask : minimal) {
    PremiseSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(universe[i]);
    report.minima.push_back(std::move(s));
  }
  report.budget_spent = judge.engine_calls() - calls_before;
  return report;
}

// ---- independence ---------------------------------------------------------

namespace {

struct AxiomList {
  std::vector<const AnnotatedFormula*> axioms;

  explicit AxiomList(const Theory& t) {
    if (t.has_conjecture()) throw std::invalid_argument("independence analysis expects axioms only");
    axioms = t.premises();
  }

  Query query(std::size_t goal, const std::vector<std::size_t>& subset) const {
    Query q;
    for (std::size_t i : subset) q.premises.push_back(*axioms[i]);
    q.goal = *axioms[goal];
    return q;
  }

  PremiseSet names(const std::vector<std::size_t>& subset) const {
    PremiseSet out;
    for (std::size_t i : subset) out.insert(axioms[i]->name);
    return out;
  }

  std::vector<std::size_t> others(std::size_t goal) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < axioms.size(); ++i)
      if (i != goal) out.push_back(i);
    return out;
  }
};

}  // namespace

IndependenceReport independence_naive(const Theory& axioms, Judge& judge) {
  AxiomList list(axioms);
  if (list.axioms.empty()) throw std::invalid_argument("independence analysis needs at least one axiom");
  std::vector<Query> queries;
  for (std::size_t i = 0; i < list.axioms.size(); ++i) queries.push_back(list.query(i, list.others(i)));
  std::vector<Entailment> verdicts = judge.decide_all(queries);

  IndependenceReport report;
  bool all_refuted = true;
  for (std::size_t i = 0; i < list.axioms.size(); ++i) {
    report.per_axiom[list.axioms[i]->name] = verdicts[i];
    if (verdicts[i] == Entailment::Proves && !report.witness)
      report.witness = DependenceWitness{list.axioms[i]->name, list.names(list.others(i))};
    all_refuted &= verdicts[i] == Entailment::DoesNotProve;
  }
  if (report.witness) report.verdict = IndependenceVerdict::Dependent;
  else if (all_refuted) report.verdict = IndependenceVerdict::Independent;
  return report;
}

IndependenceReport independence_failfast(const Theory& axioms, Judge& judge, std::optional<std::size_t> max_subset_size) {
  AxiomList list(axioms);
  std::size_t n = list.axioms.size();
  if (n < 2) throw std::invalid_argument("fail-fast independence needs at least two axioms");
  std::size_t max_k = max_subset_size.value_or(n - 1);
  if (max_k < 1 || max_k > n - 1) throw std::invalid_argument("max_subset_size must be in 1..n-1");

  IndependenceReport report;
  bool all_refuted = true;
  std::size_t chunk = judge.options().parallelism;
  for (std::size_t k = 1; k <= max_k && !report.witness; ++k) {
    // (goal, subset) pairs in goal order, subsets lexicographic.
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> level;
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<std::size_t> others = list.others(g);
      std::vector<std::size_t> comb(k);
      for (std::size_t i = 0; i < k; ++i) comb[i] = i;
      do {
        std::vector<std::size_t> subset;
        for (std::size_t i : comb) subset.push_back(others[i]);
        level.emplace_back(g, std::move(subset));
      } while (next_combination(comb, others.size()));
    }
    for (std::size_t start = 0; start < level.size() && !report.witness; start += chunk) {
      std::size_t end = std::min(level.size(), start + chunk);
      std::vector<Query> queries;
      for (std::size_t i = start; i < end; ++i) queries.push_back(list.query(level[i].first, level[i].second));
      std::vector<Entailment> verdicts = judge.decide_all(queries);
      for (std::size_t i = start; i < end; ++i) {
        Entailment e = verdicts[i - start];
        const auto& [g, subset] = level[i];
        if (e == Entailment::Proves) {
          report.witness = DependenceWitness{list.axioms[g]->name, list.names(subset)};
          report.per_axiom[list.axioms[g]->name] = Entailment::Proves;
          break;
        }
        if (e != Entailment::DoesNotProve) all_refuted = false;
        if (k == n - 1) report.per_axiom[list.axioms[g]->name] = e;
      }
    }
  }
  if (report.witness) report.verdict = IndependenceVerdict::Dependent;
  else if (all_refuted && max_k == n - 1) report.verdict = IndependenceVerdict::Independent;
  return report;
}

IndependenceReport independence_random(const Theory& axioms, Judge& judge, std::size_t trials, std::uint64_t seed) {
  AxiomList list(axioms);
  std::size_t n = list.axioms.size();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (n < 2) throw std::invalid_argument("random independence needs at least two axioms");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  IndependenceReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::size_t g = pick(rng);
    std::vector<std::size_t> subset;
    while (subset.empty())
      for (std::size_t i : list.others(g))
        if (rng() & 1) subset.push_back(i);
    Query q = list.query(g, subset);
    if (judge.decide(q) != Entailment::Proves) continue;
    // Report only witnesses that survive a fresh engine run.
    if (judge.decide(q, /*use_cache=*/false) != Entailment::Proves) continue;
    report.verdict = IndependenceVerdict::Dependent;
    report.witness = DependenceWitness{list.axioms[g]->name, list.names(subset)};
    report.per_axiom[list.axioms[g]->name] = Entailment::Proves;
    break;
  }
  return report;
}

// ---- consistency ----------------------------------------------------------

namespace {

std::string bound_text(const ConsistencyRow& row) {
  if (row.outcome && row.outcome->kind == ModelOutcome::Kind::ExhaustedUpTo)
    return " up to domain size " + std::to_string(row.outcome->exhausted_size);
  return " within the budget";
}

ConsistencyRow check(const std::string& name, const Query& q, const Engine& engine, Judge& judge) {
  ConsistencyRow row;
  row.check = name;
  row.engine_id = engine.id();
  row.budget = judge.options().timeout;
  EngineVerdict v = judge.run(engine, q);
  row.status = v.status;
  row.outcome = std::move(v.model);
  return row;
}

}  // namespace

ConsistencyReport consistency_triple(const Theory& t, const Engine& model_finder, Judge& judge) {
  ConsistencyReport report;
  Query axioms_only;
  for (const auto* p : t.premises()) axioms_only.premises.push_back(*p);

  report.axioms_only = check("axioms", axioms_only, model_finder, judge);
  auto& a = report.axioms_only;
  if (a.status == SzsStatus::Satisfiable) a.reading = "axioms are satisfiable";
  else if (a.status == SzsStatus::Unsatisfiable) {
    a.reading = "axioms are inconsistent";
    a.flagged = true;
  } else {
    a.reading = "no model of the axioms found" + bound_text(a) + "; they may be inconsistent";
    a.flagged = true;
  }

  const AnnotatedFormula* c = t.conjecture();
  if (!c) return report;

  Query with_conjecture = axioms_only;
  AnnotatedFormula as_axiom = *c;
  as_axiom.role = Role::Axiom;
  with_conjecture.premises.push_back(as_axiom);
  report.axioms_plus_conjecture = check("axioms + conjecture", with_conjecture, model_finder, judge);
  auto& b = *report.axioms_plus_conjecture;
  if (b.status == SzsStatus::Satisfiable) b.reading = "conjecture is consistent with the axioms";
  else if (b.status == SzsStatus::Unsatisfiable) {
    b.reading = "axioms refute the conjecture";
    b.flagged = true;
  } else {
    b.reading = "no model found" + bound_text(b) + "; the axioms may refute the conjecture";
    b.flagged = true;
  }

  Query negated = axioms_only;
  negated.goal = *c;
  report.axioms_plus_negated_conjecture = check("axioms + negated conjecture", negated, model_finder, judge);
  auto& d = *report.axioms_plus_negated_conjecture;
  if (d.status == SzsStatus::CounterSatisfiable) {
    d.reading = "conjecture is countersatisfiable, not derivable";
    d.flagged = true;
  } else if (d.status == SzsStatus::Theorem) {
    d.reading = "conjecture is a theorem";
  } else {
    d.reading = "no countermodel found" + bound_text(d);
  }
  return report;
}

}  // namespace proofscope
