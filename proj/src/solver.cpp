#include "iled/solver.hpp"

#include <algorithm>
#include <functional>

#include "iled/errors.hpp"

namespace iled {

int GroundProgram::intern(const Term& atom) {
  auto it = atom_ids.find(atom);
  if (it != atom_ids.end()) return it->second;
  int id = static_cast<int>(atoms.size());
  atoms.push_back(atom);
  atom_ids.emplace(atom, id);
  return id;
}

int GroundProgram::lookup(const Term& atom) const {
  auto it = atom_ids.find(atom);
  return it == atom_ids.end() ? -1 : it->second;
}

std::string GroundProgram::str() const {
  std::string s;
  auto emit = [&](const GroundClause& c) {
    std::string line = c.head < 0 ? "false" : atoms[c.head].str();
    if (!c.body_pos.empty() || !c.body_neg.empty()) {
      line += " :- ";
      bool first = true;
      for (int b : c.body_pos) {
        if (!first) line += ", ";
        line += atoms[b].str();
        first = false;
      }
      for (int b : c.body_neg) {
        if (!first) line += ", ";
        line += "not " + atoms[b].str();
        first = false;
      }
    }
    s += line + ".\n";
  };
  for (const auto& c : rules) emit(c);
  for (const auto& c : constraints) emit(c);
  return s;
}

namespace {

struct Grounder {
  const Program& p;
  const GroundOptions& opts;
  GroundProgram out;
  std::set<Term> universe;  // derivable ground atoms (over-approximation)
  std::set<Term> pool;      // untyped constant pool
  std::set<Term> emitted;   // dedup key per ground instance
  std::vector<Clause> instances;
  bool changed = false;

  explicit Grounder(const Program& prog, const GroundOptions& o) : p(prog), opts(o) {
    for (const auto& [ty, cs] : opts.domains) pool.insert(cs.begin(), cs.end());
    pool.insert(opts.window_constants.begin(), opts.window_constants.end());
    for (const Clause& c : p.clauses) collect_constants(c);
  }

  void collect_constants(const Clause& c) {
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (t.is_const()) {
        pool.insert(t);
        return;
      }
      for (const Term& a : t.args()) walk(a);
    };
    walk(c.head);
    for (const Literal& l : c.body) walk(l.atom);
  }

  const std::set<Term>& domain_for(const std::string& var) const {
    auto ty = opts.var_types.find(var);
    if (ty != opts.var_types.end()) {
      auto d = opts.domains.find(ty->second);
      if (d != opts.domains.end()) return d->second;
    }
    return pool;
  }

  // Enumerates substitutions: positive body literals are matched against the
  // universe, leftover variables range over their domains.
  void instantiate(const Clause& c, size_t lit_idx, Substitution& subst) {
    if (lit_idx < c.body.size()) {
      const Literal& l = c.body[lit_idx];
      if (l.negated) {
        instantiate(c, lit_idx + 1, subst);
        return;
      }
      for (const Term& fact : universe) {
        Substitution next = subst;
        if (!match_into(subst.apply(l.atom), fact, next)) continue;
        instantiate(c, lit_idx + 1, next);
      }
      return;
    }
    std::vector<std::string> unbound;
    for (const std::string& v : c.variables())
      if (!subst.bound(v)) unbound.push_back(v);
    bind_rest(c, unbound, 0, subst);
  }

  void bind_rest(const Clause& c, const std::vector<std::string>& unbound, size_t idx,
                 Substitution& subst) {
    if (idx == unbound.size()) {
      emit(c, subst);
      return;
    }
    const std::set<Term>& dom = domain_for(unbound[idx]);
    for (const Term& v : dom) {
      subst.bind(unbound[idx], v);
      bind_rest(c, unbound, idx + 1, subst);
      subst.unbind(unbound[idx]);
    }
  }

  void emit(const Clause& c, const Substitution& subst) {
    Clause inst = c.apply(subst);
    inst.head = eval_arith(inst.head);
    for (Literal& l : inst.body) l.atom = eval_arith(l.atom);
    if (!inst.head.ground()) return;
    for (const Literal& l : inst.body)
      if (!l.atom.ground()) return;
    if (universe.size() > opts.max_atoms) throw ResourceError("grounding exceeded max_atoms cap");
    std::vector<Term> parts{inst.head};
    for (const Literal& l : inst.body)
      parts.push_back(Term::compound(l.negated ? "naf" : "pos", {l.atom}));
    Term key = Term::compound("inst", std::move(parts));
    if (emitted.insert(std::move(key)).second) {
      instances.push_back(inst);
      changed = true;
    }
    if (!inst.constraint() && universe.insert(inst.head).second) changed = true;
  }

  GroundProgram run() {
    // safety: every variable must occur in the head or in a positive literal,
    // never only under negation
    for (const Clause& c : p.clauses) {
      std::vector<std::string> visible;
      c.head.collect_vars(visible);
      for (const Literal& l : c.body)
        if (!l.negated) l.atom.collect_vars(visible);
      for (const std::string& v : c.variables())
        if (std::find(visible.begin(), visible.end(), v) == visible.end())
          throw DataError("unsafe clause (variable " + v + " only under negation): " + c.str());
    }

    do {
      changed = false;
      for (const Clause& c : p.clauses) {
        Substitution subst;
        instantiate(c, 0, subst);
      }
    } while (changed);

    for (const Clause& inst : instances) {
      GroundClause gc;
      if (!inst.constraint()) gc.head = out.intern(inst.head);
      for (const Literal& l : inst.body) {
        int id = out.intern(l.atom);
        (l.negated ? gc.body_neg : gc.body_pos).push_back(id);
      }
      (inst.constraint() ? out.constraints : out.rules).push_back(std::move(gc));
    }
    return std::move(out);
  }
};

}  // namespace

GroundProgram ground(const Program& p, const GroundOptions& opts) {
  Grounder g(p, opts);
  return g.run();
}

Interpretation least_model(const GroundProgram& g, const Interpretation& assumptions) {
  Interpretation model = assumptions;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundClause& r : g.rules) {
      if (r.head < 0 || model.count(r.head)) continue;
      bool ok = true;
      for (int b : r.body_pos)
        if (!model.count(b)) { ok = false; break; }
      if (!ok) continue;
      // ignores negative body: caller passes reduct-style rules
      if (!r.body_neg.empty()) continue;
      model.insert(r.head);
      changed = true;
    }
  }
  return model;
}

namespace {

// Least model of the reduct of g by `neg_true` (atoms assumed true among the
// negated ones).
Interpretation reduct_least_model(const GroundProgram& g, const Interpretation& neg_true,
                                  const Interpretation& assumptions) {
  Interpretation model = assumptions;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundClause& r : g.rules) {
      if (r.head < 0 || model.count(r.head)) continue;
      bool dropped = false;
      for (int b : r.body_neg)
        if (neg_true.count(b)) { dropped = true; break; }
      if (dropped) continue;
      bool ok = true;
      for (int b : r.body_pos)
        if (!model.count(b)) { ok = false; break; }
      if (!ok) continue;
      model.insert(r.head);
      changed = true;
    }
  }
  return model;
}

}  // namespace

bool violates_constraints(const GroundProgram& g, const Interpretation& i) {
  for (const GroundClause& c : g.constraints) {
    bool fire = true;
    for (int b : c.body_pos)
      if (!i.count(b)) { fire = false; break; }
    if (fire)
      for (int b : c.body_neg)
        if (i.count(b)) { fire = false; break; }
    if (fire) return true;
  }
  return false;
}

bool is_stable_model(const GroundProgram& g, const Interpretation& i) {
  Interpretation lm = reduct_least_model(g, i, {});
  return lm == i && !violates_constraints(g, i);
}

std::vector<Interpretation> stable_models(const GroundProgram& g, size_t atom_cap) {
  if (g.atoms.size() > atom_cap)
    throw ResourceError("stable_models: Herbrand base of " + std::to_string(g.atoms.size()) +
                        " atoms exceeds the exhaustive cap of " + std::to_string(atom_cap) +
                        "; use the stratified/temporal path");
  // Only negated atoms that are derivable at all can flip a reduct.
  std::set<int> derivable;
  for (const GroundClause& r : g.rules)
    if (r.head >= 0) derivable.insert(r.head);
  std::vector<int> branch;
  {
    std::set<int> seen;
    for (const GroundClause& r : g.rules)
      for (int b : r.body_neg)
        if (derivable.count(b) && seen.insert(b).second) branch.push_back(b);
    for (const GroundClause& c : g.constraints)
      for (int b : c.body_neg)
        if (derivable.count(b) && seen.insert(b).second) branch.push_back(b);
  }
  std::sort(branch.begin(), branch.end());

  std::vector<Interpretation> models;
  size_t n = branch.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    Interpretation neg_true;
    for (size_t j = 0; j < n; ++j)
      if (mask & (size_t{1} << j)) neg_true.insert(branch[j]);
    Interpretation lm = reduct_least_model(g, neg_true, {});
    // consistency: assumed-true negated atoms must be derived, others not
    bool ok = true;
    for (size_t j = 0; j < n; ++j) {
      bool assumed = (mask & (size_t{1} << j)) != 0;
      if (lm.count(branch[j]) != (assumed ? 1u : 0u)) { ok = false; break; }
    }
    if (!ok) continue;
    if (violates_constraints(g, lm)) continue;
    models.push_back(std::move(lm));
  }
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());
  return models;
}

std::optional<Interpretation> stratified_model(const GroundProgram& g,
                                               const Interpretation& assumptions) {
  size_t n = g.atoms.size();
  // dependency edges body -> head; negative edges flagged
  std::vector<std::vector<std::pair<int, bool>>> out_edges(n);
  for (const GroundClause& r : g.rules) {
    if (r.head < 0) continue;
    for (int b : r.body_pos) out_edges[b].push_back({r.head, false});
    for (int b : r.body_neg) out_edges[b].push_back({r.head, true});
  }
  // Tarjan SCC (iterative)
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;
  for (size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, size_t>> call;
    call.push_back({static_cast<int>(root), 0});
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (ei < out_edges[v].size()) {
        int w = out_edges[v][ei].first;
        ++ei;
        if (index[w] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
      int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  // A negative edge inside an SCC breaks stratification.
  for (size_t b = 0; b < n; ++b)
    for (const auto& [h, neg] : out_edges[b])
      if (neg && comp[b] == comp[h]) return std::nullopt;

  // Rules grouped by head component; components evaluated in reverse Tarjan
  // order (Tarjan emits components in reverse topological order).
  std::vector<std::vector<const GroundClause*>> by_comp(next_comp);
  for (const GroundClause& r : g.rules)
    if (r.head >= 0) by_comp[comp[r.head]].push_back(&r);

  Interpretation model = assumptions;
  for (int c = next_comp - 1; c >= 0; --c) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const GroundClause* r : by_comp[c]) {
        if (model.count(r->head)) continue;
        bool ok = true;
        for (int b : r->body_pos)
          if (!model.count(b)) { ok = false; break; }
        if (ok)
          for (int b : r->body_neg)
            if (model.count(b)) { ok = false; break; }
        if (!ok) continue;
        model.insert(r->head);
        changed = true;
      }
    }
  }
  return model;
}

bool satisfies(const GroundProgram& g, const Interpretation& i, const std::vector<Literal>& q) {
  for (const Literal& l : q) {
    int id = g.lookup(eval_arith(l.atom));
    bool holds = id >= 0 && i.count(id) != 0;
    if (holds == l.negated) return false;
  }
  return true;
}

bool credulous_entails(const Program& p, const std::vector<Literal>& q, const GroundOptions& opts,
                       size_t atom_cap) {
  GroundProgram g = ground(p, opts);
  // goal atoms must be internable for lookup
  for (const Literal& l : q) g.intern(eval_arith(l.atom));
  if (auto m = stratified_model(g)) {
    if (violates_constraints(g, *m)) return false;
    return satisfies(g, *m, q);
  }
  for (const Interpretation& m : stable_models(g, atom_cap))
    if (satisfies(g, m, q)) return true;
  return false;
}

}  // namespace iled
