#include "iled/window.hpp"

#include <algorithm>

#include "iled/errors.hpp"

namespace iled {

std::string FluentSignature::str() const {
  std::string s = functor + "(";
  for (size_t i = 0; i < arg_types.size(); ++i) {
    if (i) s += ',';
    s += arg_types[i];
  }
  return s + ")";
}

namespace {

std::optional<long long> fact_time(const Term& atom) {
  if (!atom.is_compound() || atom.arity() != 2) return std::nullopt;
  return atom.args()[1].as_int();
}

}  // namespace

void Window::reindex() {
  events_by_time_.clear();
  statics_by_time_.clear();
  neg_by_time_.clear();
  for (const Term& f : narrative) {
    auto t = fact_time(f);
    if (!t) continue;
    if (f.symbol() == "happensAt")
      events_by_time_[*t].insert(f.args()[0]);
    else if (f.symbol() == "holdsAt")
      statics_by_time_[*t].insert(f.args()[0]);
  }
  for (const Term& f : narrative_neg) {
    auto t = fact_time(f);
    if (!t) continue;
    neg_by_time_[*t].insert(f);
  }
}

bool Window::event_at(const Term& event, long long t) const {
  auto it = events_by_time_.find(t);
  return it != events_by_time_.end() && it->second.count(event) != 0;
}

bool Window::static_true_at(const Term& fluent, long long t) const {
  auto it = statics_by_time_.find(t);
  return it != statics_by_time_.end() && it->second.count(fluent) != 0;
}

bool Window::explicit_false_at(const Term& atom, long long t) const {
  auto it = neg_by_time_.find(t);
  return it != neg_by_time_.end() && it->second.count(atom) != 0;
}

std::vector<Term> Window::facts_at(long long t) const {
  std::vector<Term> out;
  for (const Term& f : narrative) {
    auto ft = fact_time(f);
    if (ft && *ft == t) out.push_back(f);
  }
  return out;
}

std::vector<Term> Window::negatives_at(long long t) const {
  std::vector<Term> out;
  for (const Term& f : narrative_neg) {
    auto ft = fact_time(f);
    if (ft && *ft == t) out.push_back(f);
  }
  return out;
}

std::string Window::str() const {
  std::string s = "window " + std::to_string(id) + " " + std::to_string(t_start) + " " +
                  std::to_string(t_end) + ".\n";
  for (const Term& f : narrative) s += f.str() + ".\n";
  for (const Term& f : narrative_neg) s += "not " + f.str() + ".\n";
  s += "%% annotation\n";
  for (const auto& [fluent, t] : annotation)
    s += "holdsAt(" + fluent.str() + "," + std::to_string(t) + ").\n";
  return s;
}

Program sdec_axioms() {
  Term f = Term::var("F");
  Term t = Term::var("T");
  Term t1 = Term::compound("plus", {t, Term::number(1)});
  Clause init(Term::compound("holdsAt", {f, t1}));
  init.body.emplace_back(Term::compound("initiatedAt", {f, t}));
  Clause inertia(Term::compound("holdsAt", {f, t1}));
  inertia.body.emplace_back(Term::compound("holdsAt", {f, t}));
  inertia.body.emplace_back(Term::compound("terminatedAt", {f, t}), true);
  return Program({init, inertia});
}

BackgroundTheory BackgroundTheory::make(std::set<FluentSignature> inertial, Program user_rules) {
  BackgroundTheory b;
  b.sdec = sdec_axioms();
  b.user_rules = std::move(user_rules);
  b.inertial_fluents = std::move(inertial);
  return b;
}

std::map<std::string, std::set<Term>> window_type_domains(const Window& w,
                                                          const BackgroundTheory& b,
                                                          const LanguageConfig& cfg) {
  std::map<std::string, std::set<Term>> domains = cfg.type_domains;
  auto scan_atom = [&](const Term& atom) {
    for (const ModeDeclaration& m : cfg.modes) {
      std::vector<SlotBinding> slots;
      if (!match_schema(m.schema, atom, slots)) continue;
      for (const SlotBinding& s : slots)
        if (s.term.ground() && s.type != "time") domains[s.type].insert(s.term);
    }
  };
  for (const Term& f : w.narrative) scan_atom(f);
  for (const Term& f : w.narrative_neg) scan_atom(f);
  for (const auto& [fluent, t] : w.annotation) {
    (void)t;
    for (const FluentSignature& sig : b.inertial_fluents) {
      if (!sig.matches(fluent)) continue;
      for (size_t i = 0; i < sig.arg_types.size(); ++i)
        domains[sig.arg_types[i]].insert(fluent.args()[i]);
    }
  }
  return domains;
}

namespace {

void enumerate_instances(const FluentSignature& sig,
                         const std::map<std::string, std::set<Term>>& domains, size_t pos,
                         std::vector<Term>& partial, std::set<Term>& out) {
  if (pos == sig.arg_types.size()) {
    out.insert(Term::compound(sig.functor, partial));
    return;
  }
  auto it = domains.find(sig.arg_types[pos]);
  if (it == domains.end()) return;
  for (const Term& c : it->second) {
    // distinct constants across same-typed positions
    bool dup = false;
    for (size_t i = 0; i < pos; ++i)
      if (sig.arg_types[i] == sig.arg_types[pos] && partial[i] == c) dup = true;
    if (dup) continue;
    partial.push_back(c);
    enumerate_instances(sig, domains, pos + 1, partial, out);
    partial.pop_back();
  }
}

}  // namespace

std::set<Term> fluent_scope(const Window& w, const BackgroundTheory& b,
                            const LanguageConfig& cfg) {
  auto domains = window_type_domains(w, b, cfg);
  std::set<Term> out;
  for (const FluentSignature& sig : b.inertial_fluents) {
    std::vector<Term> partial;
    enumerate_instances(sig, domains, 0, partial, out);
  }
  // The annotation is always in scope even if a constant appears nowhere else.
  for (const auto& [fluent, t] : w.annotation) {
    (void)t;
    out.insert(fluent);
  }
  return out;
}

void validate_window(const Window& w, const BackgroundTheory& b) {
  if (w.t_end - w.t_start + 1 < 2)
    throw DataError("window " + std::to_string(w.id) + ": needs at least two consecutive time points");
  auto check_time = [&](const Term& atom, bool negated) {
    if (!atom.is_compound() || atom.arity() != 2 ||
        (atom.symbol() != "happensAt" && atom.symbol() != "holdsAt"))
      throw DataError("window " + std::to_string(w.id) + ": unsupported narrative fact " + atom.str());
    auto t = atom.args()[1].as_int();
    if (!t) throw DataError("window " + std::to_string(w.id) + ": non-integer timestamp in " + atom.str());
    if (*t < w.t_start || *t > w.t_end)
      throw DataError("window " + std::to_string(w.id) + ": timestamp outside window range in " +
                      (negated ? "not " : "") + atom.str());
  };
  for (const Term& f : w.narrative) check_time(f, false);
  for (const Term& f : w.narrative_neg) {
    check_time(f, true);
    auto t = f.args()[1].as_int();
    if (f.symbol() == "happensAt" && w.event_at(f.args()[0], *t))
      throw DataError("window " + std::to_string(w.id) + ": explicit negative contradicts fact " + f.str());
    if (f.symbol() == "holdsAt" && w.static_true_at(f.args()[0], *t))
      throw DataError("window " + std::to_string(w.id) + ": explicit negative contradicts fact " + f.str());
  }
  for (const auto& [fluent, t] : w.annotation) {
    if (t < w.t_start || t > w.t_end)
      throw DataError("window " + std::to_string(w.id) + ": annotation timestamp outside range for " +
                      fluent.str());
    if (!b.inertial(fluent))
      throw DataError("window " + std::to_string(w.id) + ": annotation fluent not declared inertial: " +
                      fluent.str());
  }
}

}  // namespace iled
