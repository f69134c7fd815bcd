#include "iled/abduce.hpp"

#include <algorithm>

#include "iled/errors.hpp"

namespace iled {

AbductiveSolution AbductiveSolution::make(std::vector<Term> atoms) {
  std::sort(atoms.begin(), atoms.end());
  AbductiveSolution s;
  s.cardinality = atoms.size();
  for (const Term& a : atoms) {
    if (!s.tiebreak_key.empty()) s.tiebreak_key += ";";
    s.tiebreak_key += a.str();
  }
  s.delta = std::move(atoms);
  return s;
}

bool AbductiveSolution::operator<(const AbductiveSolution& o) const {
  if (cardinality != o.cardinality) return cardinality < o.cardinality;
  return tiebreak_key < o.tiebreak_key;
}

namespace {

void enumerate_schema(const Schema& s, const std::map<std::string, std::set<Term>>& domains,
                      std::vector<Term>& out) {
  if (s.placemarker()) {
    auto it = domains.find(s.symbol);
    if (it == domains.end()) return;
    for (const Term& c : it->second) out.push_back(c);
    return;
  }
  if (s.args.empty()) {
    out.push_back(Term::constant(s.symbol));
    return;
  }
  // cartesian product over argument positions
  std::vector<std::vector<Term>> per_arg(s.args.size());
  for (size_t i = 0; i < s.args.size(); ++i) {
    enumerate_schema(s.args[i], domains, per_arg[i]);
    if (per_arg[i].empty()) return;
  }
  std::vector<size_t> idx(s.args.size(), 0);
  while (true) {
    std::vector<Term> args;
    for (size_t i = 0; i < s.args.size(); ++i) args.push_back(per_arg[i][idx[i]]);
    out.push_back(Term::compound(s.symbol, std::move(args)));
    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < per_arg[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
}

long long atom_time(const Term& atom) {
  if (atom.is_compound() && atom.arity() >= 1) {
    auto t = atom.args().back().as_int();
    if (t) return *t;
  }
  return 0;
}

struct Evaluator {
  GroundProgram g;
  std::vector<int> candidate_ids;
  std::vector<Literal> goals;
  size_t atom_cap;
  bool strat_ok = false;

  // B is grounded once with every candidate present as a potential fact;
  // per-Delta evaluation re-runs the fixpoint with Delta as assumptions.
  Evaluator(const AbductiveTask& task, const std::vector<Term>& candidates)
      : goals(task.goals), atom_cap(task.atom_cap) {
    Program bg = task.background;
    // candidates enter the universe so rules over them ground out
    for (const Term& c : candidates) bg.add(Clause(c));
    g = ground(bg, task.ground_opts);
    for (const Literal& l : task.goals) g.intern(eval_arith(l.atom));
    // strip the candidate pseudo-facts; remember their ids
    std::set<Term> cand_set(candidates.begin(), candidates.end());
    std::vector<GroundClause> kept;
    for (const GroundClause& r : g.rules) {
      if (r.head >= 0 && r.body_pos.empty() && r.body_neg.empty() &&
          cand_set.count(g.atoms[r.head]))
        continue;
      kept.push_back(r);
    }
    g.rules = std::move(kept);
    for (const Term& c : candidates) candidate_ids.push_back(g.intern(c));
    strat_ok = stratified_model(g).has_value();
  }

  bool entails(const std::vector<size_t>& chosen) {
    Interpretation assume;
    for (size_t i : chosen) assume.insert(candidate_ids[i]);
    if (strat_ok) {
      auto m = stratified_model(g, assume);
      if (!m) return false;
      if (violates_constraints(g, *m)) return false;
      return satisfies(g, *m, goals);
    }
    // exhaustive fallback: add Delta as facts and enumerate stable models
    GroundProgram gd = g;
    for (size_t i : chosen) {
      GroundClause fact;
      fact.head = candidate_ids[i];
      gd.rules.push_back(fact);
    }
    for (const Interpretation& m : stable_models(gd, atom_cap))
      if (satisfies(gd, m, goals)) return true;
    return false;
  }
};

struct CombinationSearch {
  Evaluator& eval;
  size_t n;
  size_t node_cap;
  size_t nodes = 0;
  std::vector<std::vector<size_t>> found;  // solutions (candidate index sets)
  bool collect_all_minimal = false;
  std::optional<size_t> stop_at_k;

  bool superset_of_found(const std::vector<size_t>& set) const {
    for (const auto& f : found) {
      if (f.size() > set.size()) continue;
      if (std::includes(set.begin(), set.end(), f.begin(), f.end())) return true;
    }
    return false;
  }

  void combos(size_t k, size_t start, std::vector<size_t>& cur) {
    if (cur.size() == k) {
      if (collect_all_minimal && superset_of_found(cur)) return;
      if (++nodes > node_cap)
        throw ResourceError("abduction search exceeded node cap (" + std::to_string(node_cap) +
                            " candidate sets explored)");
      if (eval.entails(cur)) found.push_back(cur);
      return;
    }
    for (size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      combos(k, i + 1, cur);
      cur.pop_back();
    }
  }
};

}  // namespace

std::vector<Term> enumerate_abducibles(const AbductiveTask& task) {
  std::vector<Term> out = task.candidate_atoms;
  if (out.empty()) {
    for (const Schema& s : task.abducibles) enumerate_schema(s, task.ground_opts.domains, out);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    long long ta = atom_time(a), tb = atom_time(b);
    if (ta != tb) return ta < tb;
    if (a.symbol() != b.symbol()) return a.symbol() < b.symbol();
    return a.str() < b.str();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<AbductiveSolution> abduce(const AbductiveTask& task, bool minimize, size_t node_cap) {
  std::vector<Term> candidates = enumerate_abducibles(task);
  Evaluator eval(task, candidates);
  CombinationSearch search{eval, candidates.size(), node_cap};
  for (size_t k = 0; k <= candidates.size(); ++k) {
    std::vector<size_t> cur;
    search.combos(k, 0, cur);
    if (!search.found.empty()) {
      // all size-k solutions collected; pick the lexicographically least key
      std::optional<AbductiveSolution> best;
      for (const auto& f : search.found) {
        std::vector<Term> atoms;
        for (size_t i : f) atoms.push_back(candidates[i]);
        AbductiveSolution s = AbductiveSolution::make(std::move(atoms));
        if (!best || s < *best) best = std::move(s);
      }
      return best;
    }
  }
  (void)minimize;  // iterative deepening returns a smallest solution either way
  return std::nullopt;
}

std::vector<AbductiveSolution> abduce_all_minimal(const AbductiveTask& task, size_t node_cap) {
  std::vector<Term> candidates = enumerate_abducibles(task);
  Evaluator eval(task, candidates);
  CombinationSearch search{eval, candidates.size(), node_cap};
  search.collect_all_minimal = true;
  for (size_t k = 0; k <= candidates.size(); ++k) {
    std::vector<size_t> cur;
    search.combos(k, 0, cur);
  }
  std::vector<AbductiveSolution> out;
  for (const auto& f : search.found) {
    std::vector<Term> atoms;
    for (size_t i : f) atoms.push_back(candidates[i]);
    out.push_back(AbductiveSolution::make(std::move(atoms)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace iled
