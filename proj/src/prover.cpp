#include "proofscope/prover.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace proofscope {

std::string_view proof_status_name(ProofStatus s) {
  switch (s) {
    case ProofStatus::Theorem: return "Theorem";
    case ProofStatus::CounterSatisfiable: return "CounterSatisfiable";
    case ProofStatus::Unsatisfiable: return "Unsatisfiable";
    case ProofStatus::Satisfiable: return "Satisfiable";
    case ProofStatus::ResourceOut: return "ResourceOut";
    case ProofStatus::GaveUp: return "GaveUp";
  }
  return "GaveUp";
}

namespace {

using Clock = std::chrono::steady_clock;
using TermId = std::uint32_t;
constexpr TermId kNone = 0xffffffffu;
// Every fourth given clause is the oldest unprocessed one.
constexpr std::size_t kWeightPicksPerAgePick = 3;

// Hash-consed terms. Atoms are terms whose head is a predicate symbol.
class TermBank {
 public:
  struct Node {
    std::int32_t head;       // symbol id, or -(v + 1) for variable v
    std::uint32_t first_arg;
    std::uint32_t arity;
    std::uint32_t weight;    // symbol count
    bool ground;
  };

  TermId var(std::uint32_t v) {
    while (vars_.size() <= v) vars_.push_back(kNone);
    if (vars_[v] == kNone) {
      vars_[v] = static_cast<TermId>(nodes_.size());
      nodes_.push_back(Node{-static_cast<std::int32_t>(v) - 1, 0, 0, 1, false});
    }
    return vars_[v];
  }

  TermId app(std::int32_t head, std::span<const TermId> args) {
    key_.clear();
    key_.push_back(static_cast<char32_t>(head));
    for (TermId a : args) key_.push_back(static_cast<char32_t>(a));
    auto it = intern_.find(key_);
    if (it != intern_.end()) return it->second;
    Node n{head, static_cast<std::uint32_t>(pool_.size()), static_cast<std::uint32_t>(args.size()), 1, true};
    for (TermId a : args) {
      n.weight += nodes_[a].weight;
      n.ground = n.ground && nodes_[a].ground;
      pool_.push_back(a);
    }
    TermId id = static_cast<TermId>(nodes_.size());
    nodes_.push_back(n);
    intern_.emplace(key_, id);
    return id;
  }

  const Node& node(TermId t) const { return nodes_[t]; }
  std::span<const TermId> args(TermId t) const {
    const Node& n = nodes_[t];
    return {pool_.data() + n.first_arg, n.arity};
  }
  bool is_var(TermId t) const { return nodes_[t].head < 0; }
  std::uint32_t var_index(TermId t) const { return static_cast<std::uint32_t>(-nodes_[t].head - 1); }

 private:
  std::vector<Node> nodes_;
  std::vector<TermId> pool_;
  std::vector<TermId> vars_;
  std::unordered_map<std::u32string, TermId> intern_;
  std::u32string key_;
};

struct Lit {
  TermId atom;
  bool positive;
  friend bool operator==(const Lit&, const Lit&) = default;
};

struct PClause {
  std::vector<Lit> lits;
  std::vector<std::uint32_t> origins;  // sorted
  std::uint32_t weight = 0;
  std::uint32_t nvars = 0;
  int selected = -1;
  std::uint64_t sig = 0;
  bool deleted = false;
  bool picked = false;
};

struct Ref {
  TermId t;
  std::uint8_t side;
};

class Unifier {
 public:
  explicit Unifier(const TermBank& bank) : bank_(bank) {}

  void prepare(std::uint32_t n0, std::uint32_t n1) {
    bind_[0].assign(n0, Ref{kNone, 0});
    bind_[1].assign(n1, Ref{kNone, 0});
  }

  Ref deref(Ref r) const {
    while (bank_.is_var(r.t)) {
      const Ref& b = bind_[r.side][bank_.var_index(r.t)];
      if (b.t == kNone) break;
      r = b;
    }
    return r;
  }

  bool unify(Ref a, Ref b) {
    stack_.clear();
    stack_.emplace_back(a, b);
    while (!stack_.empty()) {
      auto [x, y] = stack_.back();
      stack_.pop_back();
      x = deref(x);
      y = deref(y);
      if (x.t == y.t && (x.side == y.side || bank_.node(x.t).ground)) continue;
      if (bank_.is_var(x.t)) {
        if (occurs(x, y)) return false;
        bind_[x.side][bank_.var_index(x.t)] = y;
        continue;
      }
      if (bank_.is_var(y.t)) {
        if (occurs(y, x)) return false;
        bind_[y.side][bank_.var_index(y.t)] = x;
        continue;
      }
      const auto& nx = bank_.node(x.t);
      const auto& ny = bank_.node(y.t);
      if (nx.head != ny.head || nx.arity != ny.arity) return false;
      auto ax = bank_.args(x.t);
      auto ay = bank_.args(y.t);
      for (std::size_t i = 0; i < ax.size(); ++i) stack_.emplace_back(Ref{ax[i], x.side}, Ref{ay[i], y.side});
    }
    return true;
  }

 private:
  // Does variable `v` occur in `r` (after dereferencing)?
  bool occurs(Ref v, Ref r) const {
    r = deref(r);
    if (bank_.is_var(r.t)) return r.side == v.side && r.t == v.t;
    if (bank_.node(r.t).ground) return false;
    for (TermId a : bank_.args(r.t))
      if (occurs(v, Ref{a, r.side})) return true;
    return false;
  }

  const TermBank& bank_;
  std::vector<Ref> bind_[2];
  std::vector<std::pair<Ref, Ref>> stack_;
};

class Renamer {
 public:
  void prepare(std::uint32_t n0, std::uint32_t n1) {
    map_[0].assign(n0, kNone);
    map_[1].assign(n1, kNone);
    next_ = 0;
  }
  std::uint32_t get(std::uint8_t side, std::uint32_t v) {
    auto& slot = map_[side][v];
    if (slot == kNone) slot = next_++;
    return slot;
  }
  std::uint32_t count() const { return next_; }

 private:
  std::vector<std::uint32_t> map_[2];
  std::uint32_t next_ = 0;
};

class Saturation {
 public:
  Saturation(const ClauseSet& input, const ProverLimits& limits)
      : limits_(limits), unifier_(bank_), start_(Clock::now()) {
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(limits.wall_clock_budget));
    load(input);
  }

  ProofOutcome run() {
    ProofOutcome out;
    if (!found_empty_) loop();
    if (found_empty_) {
      out.status = ProofStatus::Unsatisfiable;
      for (std::uint32_t o : empty_origins_) {
        const std::string& name = origin_names_[o];
        if (name != kEqualityOrigin && name != kNegatedConjectureOrigin) out.used_premises.insert(name);
      }
      out.axioms_inconsistent =
          std::none_of(empty_origins_.begin(), empty_origins_.end(),
                       [&](std::uint32_t o) { return origin_names_[o] == kNegatedConjectureOrigin; });
    } else if (resource_out_) {
      out.status = ProofStatus::ResourceOut;
    } else if (incomplete_) {
      out.status = ProofStatus::GaveUp;
    } else {
      out.status = ProofStatus::Satisfiable;
    }
    out.statistics.generated = generated_;
    out.statistics.kept = clauses_.size();
    out.statistics.processed = processed_count_;
    out.statistics.elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    return out;
  }

 private:
  // ---- input conversion -------------------------------------------------

  std::int32_t symbol(const std::string& name, std::size_t arity, bool predicate) {
    std::string key = (predicate ? "p:" : "f:") + name + "/" + std::to_string(arity);
    auto [it, inserted] = symbols_.try_emplace(key, static_cast<std::int32_t>(symbols_.size()));
    if (inserted) symbol_info_.push_back({name, arity, predicate});
    return it->second;
  }

  TermId convert(const Term& t, std::map<std::string, std::uint32_t>& vars) {
    if (t.is_variable()) {
      auto [it, inserted] = vars.try_emplace(t.name, static_cast<std::uint32_t>(vars.size()));
      return bank_.var(it->second);
    }
    std::vector<TermId> args;
    for (const auto& a : t.args) args.push_back(convert(a, vars));
    return bank_.app(symbol(t.name, t.args.size(), false), args);
  }

  std::uint32_t origin_index(const std::string& name) {
    auto [it, inserted] = origin_ids_.try_emplace(name, static_cast<std::uint32_t>(origin_names_.size()));
    if (inserted) origin_names_.push_back(name);
    return it->second;
  }

  void load(const ClauseSet& input) {
    bool has_equality = false;
    for (const auto& c : input) {
      PClause pc;
      std::map<std::string, std::uint32_t> vars;
      for (const auto& l : c.literals) {
        std::vector<TermId> args;
        for (const auto& a : l.args) args.push_back(convert(a, vars));
        if (l.is_equality()) has_equality = true;
        pc.lits.push_back(Lit{bank_.app(symbol(l.predicate, l.args.size(), true), args), l.positive});
      }
      for (const auto& o : c.origins) pc.origins.push_back(origin_index(o));
      std::sort(pc.origins.begin(), pc.origins.end());
      pc.nvars = static_cast<std::uint32_t>(vars.size());
      if (!finish(pc)) continue;
      keep(std::move(pc));
      if (found_empty_) return;
    }
    if (has_equality) add_equality_axioms();
  }

  void add_equality_axioms() {
    std::int32_t eq = symbol(kEqualityPredicate, 2, true);
    std::uint32_t origin = origin_index(kEqualityOrigin);
    auto v = [&](std::uint32_t i) { return bank_.var(i); };
    auto eq_atom = [&](TermId a, TermId b) {
      TermId args[2] = {a, b};
      return bank_.app(eq, args);
    };
    auto add = [&](std::vector<Lit> lits, std::uint32_t nvars) {
      PClause pc;
      pc.lits = std::move(lits);
      pc.origins = {origin};
      pc.nvars = nvars;
      if (finish(pc)) keep(std::move(pc));
    };
    add({Lit{eq_atom(v(0), v(0)), true}}, 1);
    add({Lit{eq_atom(v(0), v(1)), false}, Lit{eq_atom(v(1), v(0)), true}}, 2);
    add({Lit{eq_atom(v(0), v(1)), false}, Lit{eq_atom(v(1), v(2)), false}, Lit{eq_atom(v(0), v(2)), true}}, 3);
    auto infos = symbol_info_;
    for (std::size_t s = 0; s < infos.size(); ++s) {
      const auto& info = infos[s];
      if (info.arity == 0 || (info.predicate && info.name == kEqualityPredicate)) continue;
      auto n = static_cast<std::uint32_t>(info.arity);
      for (std::uint32_t pos = 0; pos < n; ++pos) {
        std::vector<TermId> lhs_args, rhs_args;
        for (std::uint32_t i = 0; i < n; ++i) {
          lhs_args.push_back(v(i));
          rhs_args.push_back(i == pos ? v(n) : v(i));
        }
        TermId lhs = bank_.app(static_cast<std::int32_t>(s), lhs_args);
        TermId rhs = bank_.app(static_cast<std::int32_t>(s), rhs_args);
        Lit premise{eq_atom(v(pos), v(n)), false};
        if (info.predicate) add({premise, Lit{lhs, false}, Lit{rhs, true}}, n + 1);
        else add({premise, Lit{eq_atom(lhs, rhs), true}}, n + 1);
      }
    }
  }

  // ---- clause bookkeeping ----------------------------------------------

  bool is_equality(TermId atom) const {
    const auto& info = symbol_info_[static_cast<std::size_t>(bank_.node(atom).head)];
    return info.predicate && info.arity == 2 && info.name == kEqualityPredicate;
  }

  // Deduplicates literals and drops s != s. Returns false for tautologies.
  bool finish(PClause& c) {
    std::vector<Lit> lits;
    lits.reserve(c.lits.size());
    for (const Lit& l : c.lits) {
      if (is_equality(l.atom)) {
        auto args = bank_.args(l.atom);
        if (args[0] == args[1]) {
          if (l.positive) return false;
          continue;
        }
      }
      bool dup = false;
      for (const Lit& k : lits) {
        if (k.atom == l.atom) {
          if (k.positive != l.positive) return false;
          dup = true;
          break;
        }
      }
      if (!dup) lits.push_back(l);
    }
    c.lits = std::move(lits);
    c.weight = 0;
    c.sig = 0;
    c.selected = -1;
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
      const Lit& l = c.lits[i];
      std::uint32_t w = bank_.node(l.atom).weight;
      c.weight += w;
      c.sig |= std::uint64_t{1} << (key_of(l) % 64);
      if (!l.positive && select_score(l, w) > 0 && (c.selected < 0 || select_score(l, w) > best)) {
        c.selected = static_cast<int>(i);
        best = select_score(l, w);
      }
    }
    return true;
  }

  // Heaviest negative literal, preferring non-equality atoms.
  std::uint32_t select_score(const Lit& l, std::uint32_t w) const {
    return is_equality(l.atom) ? w + 1 : w + (1u << 20);
  }

  std::size_t key_of(const Lit& l) const {
    return static_cast<std::size_t>(bank_.node(l.atom).head) * 2 + (l.positive ? 1 : 0);
  }

  void keep(PClause c) {
    auto idx = static_cast<std::uint32_t>(clauses_.size());
    if (c.lits.empty()) {
      found_empty_ = true;
      empty_origins_ = c.origins;
    }
    queue_.push(QueueEntry{c.weight, idx});
    clauses_.push_back(std::move(c));
  }

  // ---- subsumption ------------------------------------------------------

  bool match(TermId pattern, TermId target) {
    const auto& np = bank_.node(pattern);
    if (np.ground) return pattern == target;
    if (np.head < 0) {
      std::uint32_t v = bank_.var_index(pattern);
      if (match_bind_[v] == kNone) {
        match_bind_[v] = target;
        match_trail_.push_back(v);
        return true;
      }
      return match_bind_[v] == target;
    }
    const auto& nt = bank_.node(target);
    if (nt.head != np.head) return false;
    auto ap = bank_.args(pattern);
    auto at = bank_.args(target);
    for (std::size_t i = 0; i < ap.size(); ++i)
      if (!match(ap[i], at[i])) return false;
    return true;
  }

  bool subsume_from(const PClause& c, const PClause& d, std::size_t i) {
    if (i == c.lits.size()) return true;
    const Lit& l = c.lits[i];
    for (const Lit& m : d.lits) {
      if (m.positive != l.positive) continue;
      std::size_t mark = match_trail_.size();
      if (match(l.atom, m.atom) && subsume_from(c, d, i + 1)) return true;
      while (match_trail_.size() > mark) {
        match_bind_[match_trail_.back()] = kNone;
        match_trail_.pop_back();
      }
    }
    return false;
  }

  bool subsumes(const PClause& c, const PClause& d) {
    if (c.lits.size() > d.lits.size() || (c.sig & ~d.sig) != 0) return false;
    match_bind_.assign(c.nvars, kNone);
    match_trail_.clear();
    return subsume_from(c, d, 0);
  }

  bool forward_subsumed(const PClause& d) {
    for (const Lit& l : d.lits) {
      std::size_t key = key_of(l);
      if (key >= first_lit_index_.size()) continue;
      for (std::uint32_t ci : first_lit_index_[key]) {
        const PClause& c = clauses_[ci];
        if (!c.deleted && subsumes(c, d)) return true;
      }
    }
    return false;
  }

  void backward_subsume(std::uint32_t gi) {
    const PClause& g = clauses_[gi];
    if (g.lits.empty()) return;
    std::size_t key = key_of(g.lits[0]);
    if (key >= any_lit_index_.size()) return;
    for (std::uint32_t di : any_lit_index_[key]) {
      PClause& d = clauses_[di];
      if (di == gi || d.deleted) continue;
      if (subsumes(clauses_[gi], d)) d.deleted = true;
    }
  }

  // ---- inference --------------------------------------------------------

  std::vector<std::size_t> eligible(const PClause& c) const {
    if (c.selected >= 0) return {static_cast<std::size_t>(c.selected)};
    std::vector<std::size_t> all(c.lits.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  TermId instantiate(Ref r) {
    r = unifier_.deref(r);
    const auto& n = bank_.node(r.t);
    if (n.head < 0) return bank_.var(renamer_.get(r.side, bank_.var_index(r.t)));
    if (n.ground) return r.t;
    std::vector<TermId> args;
    args.reserve(n.arity);
    for (TermId a : bank_.args(r.t)) args.push_back(instantiate(Ref{a, r.side}));
    return bank_.app(n.head, args);
  }

  static std::vector<std::uint32_t> merge(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  void consider(PClause c) {
    ++generated_;
    if (!finish(c)) return;
    if (limits_.max_clause_weight && c.weight > *limits_.max_clause_weight) {
      incomplete_ = true;
      return;
    }
    if (forward_subsumed(c)) return;
    keep(std::move(c));
  }

  void resolve(std::uint32_t ai, std::size_t li, std::uint32_t bi, std::size_t lj) {
    const PClause& a = clauses_[ai];
    const PClause& b = clauses_[bi];
    unifier_.prepare(a.nvars, b.nvars);
    if (!unifier_.unify(Ref{a.lits[li].atom, 0}, Ref{b.lits[lj].atom, 1})) return;
    renamer_.prepare(a.nvars, b.nvars);
    PClause r;
    for (std::size_t k = 0; k < a.lits.size(); ++k)
      if (k != li) r.lits.push_back(Lit{instantiate(Ref{a.lits[k].atom, 0}), a.lits[k].positive});
    for (std::size_t k = 0; k < b.lits.size(); ++k)
      if (k != lj) r.lits.push_back(Lit{instantiate(Ref{b.lits[k].atom, 1}), b.lits[k].positive});
    r.nvars = renamer_.count();
    r.origins = merge(clauses_[ai].origins, clauses_[bi].origins);
    consider(std::move(r));
  }

  void factor(std::uint32_t ai, std::size_t li, std::size_t lj) {
    const PClause& a = clauses_[ai];
    unifier_.prepare(a.nvars, 0);
    if (!unifier_.unify(Ref{a.lits[li].atom, 0}, Ref{a.lits[lj].atom, 0})) return;
    renamer_.prepare(a.nvars, 0);
    PClause r;
    for (std::size_t k = 0; k < a.lits.size(); ++k)
      if (k != lj) r.lits.push_back(Lit{instantiate(Ref{a.lits[k].atom, 0}), a.lits[k].positive});
    r.nvars = renamer_.count();
    r.origins = a.origins;
    consider(std::move(r));
  }

  void index_processed(std::uint32_t gi) {
    const PClause& g = clauses_[gi];
    auto grow = [](std::vector<std::vector<std::uint32_t>>& idx, std::size_t key) {
      if (idx.size() <= key) idx.resize(key + 1);
      return &idx[key];
    };
    if (!g.lits.empty()) grow(first_lit_index_, key_of(g.lits[0]))->push_back(gi);
    std::vector<std::size_t> seen;
    for (const Lit& l : g.lits) {
      std::size_t key = key_of(l);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      grow(any_lit_index_, key)->push_back(gi);
    }
    for (std::size_t li : eligible(g)) {
      std::size_t key = key_of(g.lits[li]);
      if (partners_.size() <= key) partners_.resize(key + 1);
      partners_[key].emplace_back(gi, static_cast<std::uint32_t>(li));
    }
  }

  bool out_of_budget() {
    if (clauses_.size() >= limits_.max_clause_count) return true;
    return Clock::now() > deadline_;
  }

  void loop() {
    while (!queue_.empty()) {
      if (out_of_budget()) {
        resource_out_ = true;
        return;
      }
      std::uint32_t gi;
      if (++picks_ % (kWeightPicksPerAgePick + 1) == 0) {
        while (age_cursor_ < clauses_.size() && (clauses_[age_cursor_].deleted || clauses_[age_cursor_].picked)) ++age_cursor_;
        if (age_cursor_ >= clauses_.size()) continue;
        gi = static_cast<std::uint32_t>(age_cursor_);
      } else {
        gi = queue_.top().index;
        queue_.pop();
        if (clauses_[gi].picked) continue;
      }
      clauses_[gi].picked = true;
      if (clauses_[gi].deleted) continue;
      if (forward_subsumed(clauses_[gi])) {
        clauses_[gi].deleted = true;
        continue;
      }
      backward_subsume(gi);
      index_processed(gi);
      ++processed_count_;

      std::vector<std::size_t> lits = eligible(clauses_[gi]);
      for (std::size_t li : lits) {
        Lit l = clauses_[gi].lits[li];
        std::size_t key = key_of(l) ^ 1;
        if (key >= partners_.size()) continue;
        // The partner list may grow while we iterate (new entries are not processed yet).
        std::size_t count = partners_[key].size();
        for (std::size_t p = 0; p < count; ++p) {
          auto [bi, lj] = partners_[key][p];
          if (clauses_[bi].deleted) continue;
          resolve(gi, li, bi, lj);
          if (found_empty_) return;
        }
      }
      if (clauses_[gi].selected < 0) {
        std::size_t n = clauses_[gi].lits.size();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (clauses_[gi].lits[i].positive && clauses_[gi].lits[j].positive &&
                bank_.node(clauses_[gi].lits[i].atom).head == bank_.node(clauses_[gi].lits[j].atom).head) {
              factor(gi, i, j);
              if (found_empty_) return;
            }
      }
      if (Clock::now() > deadline_) {
        resource_out_ = true;
        return;
      }
    }
  }

  struct SymbolInfo {
    std::string name;
    std::size_t arity;
    bool predicate;
  };

  struct QueueEntry {
    std::uint32_t weight;
    std::uint32_t index;
    bool operator>(const QueueEntry& o) const {
      return weight != o.weight ? weight > o.weight : index > o.index;
    }
  };

  ProverLimits limits_;
  TermBank bank_;
  Unifier unifier_;
  Renamer renamer_;
  Clock::time_point start_;
  Clock::time_point deadline_;

  std::map<std::string, std::int32_t> symbols_;
  std::vector<SymbolInfo> symbol_info_;
  std::map<std::string, std::uint32_t> origin_ids_;
  std::vector<std::string> origin_names_;

  std::vector<PClause> clauses_;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> partners_;
  std::vector<std::vector<std::uint32_t>> first_lit_index_;
  std::vector<std::vector<std::uint32_t>> any_lit_index_;

  std::vector<TermId> match_bind_;
  std::vector<std::uint32_t> match_trail_;

  bool found_empty_ = false;
  std::vector<std::uint32_t> empty_origins_;
  bool resource_out_ = false;
  bool incomplete_ = false;
  std::size_t generated_ = 0;
  std::size_t processed_count_ = 0;
  std::size_t picks_ = 0;
  std::size_t age_cursor_ = 0;
};

std::vector<NamedFormula> premise_formulas(const Theory& t) {
  std::vector<NamedFormula> out;
  for (const auto* f : t.premises()) out.push_back({f->name, f->formula});
  return out;
}

}  // namespace

ProofOutcome saturate(const ClauseSet& clauses, const ProverLimits& limits) {
  if (limits.wall_clock_budget <= 0 || limits.max_clause_count == 0 ||
      (limits.max_clause_weight && *limits.max_clause_weight == 0))
    throw std::invalid_argument("prover limits must be strictly positive");
  return Saturation(clauses, limits).run();
}

ProofOutcome prove(const Theory& t, const ProverLimits& limits) {
  const auto* conj = t.conjecture();
  if (!conj) throw std::invalid_argument("prove: theory has no conjecture (use refute)");
  auto named = premise_formulas(t);
  named.push_back({kNegatedConjectureOrigin, negate(conj->formula)});
  ProofOutcome out = saturate(clausify(named), limits);
  if (out.status == ProofStatus::Unsatisfiable) out.status = ProofStatus::Theorem;
  else if (out.status == ProofStatus::Satisfiable) out.status = ProofStatus::CounterSatisfiable;
  return out;
}

ProofOutcome refute(const Theory& t, const ProverLimits& limits) {
  if (t.has_conjecture()) throw std::invalid_argument("refute: theory has a conjecture (use prove)");
  ProofOutcome out = saturate(clausify(premise_formulas(t)), limits);
  out.axioms_inconsistent = false;
  return out;
}

}  // namespace proofscope
