#include "iled/recognize.hpp"

#include <algorithm>
#include <functional>

#include "iled/errors.hpp"

namespace iled {

bool init_headed(const Clause& c) { return c.head.symbol() == "initiatedAt"; }
bool term_headed(const Clause& c) { return c.head.symbol() == "terminatedAt"; }

std::vector<Term> window_constant_pool(const Window& w) {
  std::set<Term> pool;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_const()) {
      pool.insert(t);
      return;
    }
    for (const Term& a : t.args()) walk(a);
  };
  for (const Term& f : w.narrative) walk(f);
  for (const Term& f : w.narrative_neg) walk(f);
  for (const auto& [fluent, t] : w.annotation) {
    walk(fluent);
    (void)t;
  }
  return {pool.begin(), pool.end()};
}

namespace {

struct BodyEval {
  const Window& w;
  const BackgroundTheory& b;
  const HoldsFn& holds;
  const std::vector<Term>& pool;

  bool atom_true(const Term& atom) const {
    if (atom.arity() != 2) return false;
    auto t = atom.args()[1].as_int();
    if (!t) return false;
    const Term& inner = atom.args()[0];
    if (atom.symbol() == "happensAt") return w.event_at(inner, *t);
    if (atom.symbol() == "holdsAt") {
      if (b.inertial(inner)) return holds && holds(inner, *t);
      return w.static_true_at(inner, *t);
    }
    return false;
  }

  // candidates a positive literal can match, given the time is resolved
  void positive_candidates(const Term& atom, long long t, std::vector<Term>& out) const {
    if (atom.symbol() == "happensAt") {
      for (const Term& f : w.facts_at(t))
        if (f.symbol() == "happensAt") out.push_back(f);
    } else if (atom.symbol() == "holdsAt") {
      for (const Term& f : w.facts_at(t))
        if (f.symbol() == "holdsAt") out.push_back(f);
      // inertial instances currently holding are also matchable
      // (enumerated by the caller through the scope)
    }
  }

  // Non-ground positive holdsAt literals match narrative statics; inertial
  // fluents reach body evaluation ground (their variables come from the
  // head), so the ground path consults the holds relation for them.
  bool satisfiable(const std::vector<Literal>& body, size_t idx, Substitution& subst) const {
    if (idx == body.size()) return true;
    const Literal& l = body[idx];
    Term atom = eval_arith(subst.apply(l.atom));
    if (!l.negated) {
      if (atom.ground()) {
        return atom_true(atom) && satisfiable(body, idx + 1, subst);
      }
      auto t = atom.arity() == 2 ? atom.args()[1].as_int() : std::nullopt;
      std::vector<Term> cands;
      if (t) positive_candidates(atom, *t, cands);
      for (const Term& cand : cands) {
        Substitution next = subst;
        if (!match_into(atom, cand, next)) continue;
        if (satisfiable(body, idx + 1, next)) {
          subst = next;
          return true;
        }
      }
      return false;
    }
    // negation as failure; free variables are instantiated existentially
    if (atom.ground()) {
      return !atom_true(atom) && satisfiable(body, idx + 1, subst);
    }
    std::vector<std::string> vars;
    atom.collect_vars(vars);
    std::function<bool(size_t, Substitution&)> enumerate = [&](size_t vi, Substitution& s) -> bool {
      if (vi == vars.size()) {
        Term ground_atom = eval_arith(s.apply(atom));
        if (!ground_atom.ground()) return false;
        if (atom_true(ground_atom)) return false;
        Substitution next = s;
        return satisfiable(body, idx + 1, next);
      }
      for (const Term& c : pool) {
        s.bind(vars[vi], c);
        bool ok = enumerate(vi + 1, s);
        s.unbind(vars[vi]);
        if (ok) return true;
      }
      return false;
    };
    return enumerate(0, subst);
  }
};

}  // namespace

bool clause_fires(const Clause& c, const Term& fluent, long long t, const Window& w,
                  const BackgroundTheory& b, const HoldsFn& holds,
                  const std::vector<Term>& pool) {
  if (c.head.arity() != 2) return false;
  Substitution subst;
  if (!match_into(c.head.args()[0], fluent, subst)) return false;
  if (!match_into(c.head.args()[1], Term::number(t), subst)) return false;
  BodyEval eval{w, b, holds, pool};
  return eval.satisfiable(c.body, 0, subst);
}

namespace {

// Evaluates h's user rules for statically defined fluents; the engine's
// hypothesis language keeps statics in the narrative, so this is a plain
// per-time fixpoint for completeness.
void apply_user_rules(const BackgroundTheory& b, Window& scratch) {
  if (b.user_rules.empty()) return;
  std::vector<Term> pool = window_constant_pool(scratch);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : b.user_rules.clauses) {
      if (c.head.symbol() != "holdsAt" || c.head.arity() != 2) continue;
      for (long long t = scratch.t_start; t <= scratch.t_end; ++t) {
        // enumerate groundings of the head fluent over the pool via body search
        BodyEval eval{scratch, b, nullptr, pool};
        std::vector<std::string> vars = c.variables();
        std::function<bool(size_t, Substitution&)> enumerate = [&](size_t vi, Substitution& s) -> bool {
          if (vi == vars.size()) {
            if (!eval.satisfiable(c.body, 0, s)) return false;
            Term head = eval_arith(s.apply(c.head));
            if (!head.ground()) return false;
            const Term& fl = head.args()[0];
            auto ht = head.args()[1].as_int();
            if (!ht || scratch.static_true_at(fl, *ht)) return false;
            scratch.narrative.push_back(head);
            scratch.reindex();
            return true;
          }
          if (s.bound(vars[vi])) return enumerate(vi + 1, s);
          Substitution saved = s;
          std::vector<Term> cands{Term::number(t)};
          cands.insert(cands.end(), pool.begin(), pool.end());
          for (const Term& cterm : cands) {
            s.bind(vars[vi], cterm);
            if (enumerate(vi + 1, s)) return true;
            s = saved;
          }
          return false;
        };
        Substitution s0;
        if (enumerate(0, s0)) changed = true;
      }
    }
  }
}

}  // namespace

std::map<long long, std::set<Term>> recognize(const Program& h, const BackgroundTheory& b,
                                              const Window& w, const LanguageConfig& cfg) {
  Window scratch = w;
  apply_user_rules(b, scratch);
  const std::set<Term> scope = fluent_scope(scratch, b, cfg);
  const std::vector<Term> pool = window_constant_pool(scratch);

  std::map<long long, std::set<Term>> state;
  auto& seed = state[scratch.t_start];
  for (const auto& [fluent, t] : scratch.annotation)
    if (t == scratch.t_start) seed.insert(fluent);

  for (long long t = scratch.t_start; t < scratch.t_end; ++t) {
    const std::set<Term>& now = state[t];
    HoldsFn holds = [&](const Term& f, long long at) {
      auto it = state.find(at);
      return it != state.end() && it->second.count(f) != 0;
    };
    std::set<Term> next;
    for (const Term& f : scope) {
      bool initiated = false, terminated = false;
      for (const Clause& c : h.clauses) {
        if (init_headed(c) && !initiated)
          initiated = clause_fires(c, f, t, scratch, b, holds, pool);
        if (term_headed(c) && !terminated)
          terminated = clause_fires(c, f, t, scratch, b, holds, pool);
        if (initiated && terminated) break;
      }
      if (initiated || (now.count(f) && !terminated)) next.insert(f);
    }
    state[t + 1] = std::move(next);
  }
  return state;
}

std::set<std::pair<Term, long long>> recognize_atoms(const Program& h, const BackgroundTheory& b,
                                                     const Window& w, const LanguageConfig& cfg) {
  std::set<std::pair<Term, long long>> out;
  for (const auto& [t, fluents] : recognize(h, b, w, cfg))
    for (const Term& f : fluents) out.insert({f, t});
  return out;
}

CoverageReport covers(const Program& h, const BackgroundTheory& b, const Window& w,
                      const LanguageConfig& cfg) {
  CoverageReport rep;
  auto derived = recognize_atoms(h, b, w, cfg);
  for (const auto& pos : w.annotation) {
    if (derived.count(pos))
      rep.covered_positives.insert(pos);
    else
      rep.uncovered_positives.insert(pos);
  }
  for (const auto& atom : derived)
    if (!w.annotation.count(atom)) rep.covered_negatives.insert(atom);
  return rep;
}

ClauseStatus classify_clause(const Clause& c, const BackgroundTheory& b, const Window& w,
                             const LanguageConfig& cfg) {
  ClauseStatus st;
  const std::set<Term> scope = fluent_scope(w, b, cfg);
  const std::vector<Term> pool = window_constant_pool(w);
  HoldsFn truth = [&w](const Term& f, long long t) { return w.annotated(f, t); };
  for (long long t = w.t_start; t < w.t_end; ++t) {
    for (const Term& f : scope) {
      if (init_headed(c)) {
        if (!w.annotated(f, t + 1) && clause_fires(c, f, t, w, b, truth, pool))
          st.witnesses.insert({f, t + 1});
      } else if (term_headed(c)) {
        if (w.annotated(f, t) && w.annotated(f, t + 1) && clause_fires(c, f, t, w, b, truth, pool))
          st.witnesses.insert({f, t + 1});
      }
    }
  }
  st.revisable = !st.witnesses.empty();
  return st;
}

std::set<std::pair<Term, long long>> clause_positive_footprint(const Clause& c,
                                                               const BackgroundTheory& b,
                                                               const Window& w,
                                                               const LanguageConfig& cfg) {
  std::set<std::pair<Term, long long>> out;
  const std::set<Term> scope = fluent_scope(w, b, cfg);
  const std::vector<Term> pool = window_constant_pool(w);
  HoldsFn truth = [&w](const Term& f, long long t) { return w.annotated(f, t); };
  for (long long t = w.t_start; t < w.t_end; ++t) {
    for (const Term& f : scope) {
      if (init_headed(c)) {
        if (w.annotated(f, t + 1) && !w.annotated(f, t) && clause_fires(c, f, t, w, b, truth, pool))
          out.insert({f, t + 1});
      } else if (term_headed(c)) {
        if (w.annotated(f, t) && !w.annotated(f, t + 1) && clause_fires(c, f, t, w, b, truth, pool))
          out.insert({f, t + 1});
      }
    }
  }
  return out;
}

}  // namespace iled
