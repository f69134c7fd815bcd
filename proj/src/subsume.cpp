#include "iled/subsume.hpp"

#include <algorithm>

namespace iled {

namespace {

// Backtracking body-literal matching with first-fail ordering: literals
// with the fewest candidate targets are matched first. Clause sizes are
// window-bounded, so completeness matters more than clever indexing.
struct Matcher {
  const std::vector<Literal>& target_body;

  bool search(std::vector<const Literal*>& pending, Substitution& subst) {
    if (pending.empty()) return true;
    size_t best = 0, best_count = target_body.size() + 1;
    std::vector<std::vector<const Literal*>> cands(pending.size());
    for (size_t i = 0; i < pending.size(); ++i) {
      for (const Literal& t : target_body) {
        if (t.negated != pending[i]->negated) continue;
        Substitution probe = subst;
        if (match_into(pending[i]->atom, t.atom, probe)) cands[i].push_back(&t);
      }
      if (cands[i].size() < best_count) {
        best_count = cands[i].size();
        best = i;
      }
    }
    if (best_count == 0) return false;
    const Literal* lit = pending[best];
    std::vector<const Literal*> rest;
    rest.reserve(pending.size() - 1);
    for (size_t i = 0; i < pending.size(); ++i)
      if (i != best) rest.push_back(pending[i]);
    for (const Literal* t : cands[best]) {
      Substitution next = subst;
      if (!match_into(lit->atom, t->atom, next)) continue;
      if (search(rest, next)) {
        subst = next;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Substitution> theta_subsumption_witness(const Clause& c, const Clause& d) {
  static const std::string kSuffix = "__s";
  Clause cs = c.rename_apart(kSuffix);
  Substitution subst;
  if (!match_into(cs.head, d.head, subst)) return std::nullopt;
  std::vector<const Literal*> pending;
  pending.reserve(cs.body.size());
  for (const Literal& l : cs.body) pending.push_back(&l);
  Matcher m{d.body};
  if (!m.search(pending, subst)) return std::nullopt;
  // Report bindings under the original variable names.
  Substitution out;
  for (const auto& [v, t] : subst.bindings()) {
    if (v.size() > kSuffix.size() && v.compare(v.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0)
      out.bind(v.substr(0, v.size() - kSuffix.size()), subst.apply(t));
  }
  return out;
}

bool theta_subsumes(const Clause& c, const Clause& d) {
  return theta_subsumption_witness(c, d).has_value();
}

bool theta_subsumes_program(const Program& p1, const Program& p2) {
  for (const Clause& c : p1.clauses) {
    bool found = false;
    for (const Clause& d : p2.clauses) {
      if (theta_subsumes(c, d)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace iled
