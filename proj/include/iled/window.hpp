#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "iled/clause.hpp"
#include "iled/modes.hpp"

namespace iled {

// An inertial fluent signature with argument types, e.g. fighting(pid,pid).
struct FluentSignature {
  std::string functor;
  std::vector<std::string> arg_types;

  bool matches(const Term& fluent) const {
    return fluent.symbol() == functor && fluent.arity() == arg_types.size();
  }
  bool operator<(const FluentSignature& o) const {
    if (functor != o.functor) return functor < o.functor;
    return arg_types < o.arg_types;
  }
  std::string str() const;
};

// One batch of >= 2 consecutive time points: narrative facts (low-level
// events and statically defined fluents, with explicit negatives) plus the
// annotation (positive holdsAt atoms over inertial fluents; negatives by
// closed world).
struct Window {
  long long id = 0;
  long long t_start = 0;
  long long t_end = 0;  // inclusive

  std::vector<Term> narrative;      // ground happensAt/2 and holdsAt/2 facts
  std::vector<Term> narrative_neg;  // explicitly negated ground facts
  std::set<std::pair<Term, long long>> annotation;  // (fluent, time)

  size_t num_times() const { return static_cast<size_t>(t_end - t_start + 1); }

  bool event_at(const Term& event, long long t) const;
  bool static_true_at(const Term& fluent, long long t) const;
  bool explicit_false_at(const Term& atom, long long t) const;  // full atom, e.g. holdsAt(f,t)
  bool annotated(const Term& fluent, long long t) const { return annotation.count({fluent, t}) != 0; }

  // All positive facts / explicit negatives whose time argument is t.
  std::vector<Term> facts_at(long long t) const;
  std::vector<Term> negatives_at(long long t) const;

  // Rebuilds the per-time lookup indexes; called after construction.
  void reindex();

  std::string str() const;

 private:
  std::map<long long, std::set<Term>> events_by_time_;   // event term of happensAt
  std::map<long long, std::set<Term>> statics_by_time_;  // fluent term of holdsAt
  std::map<long long, std::set<Term>> neg_by_time_;      // whole negated atoms
};

// SDEC plus user rules and the declared inertial fluent signatures. The two
// SDEC axioms are fixed.
struct BackgroundTheory {
  Program sdec;
  Program user_rules;
  std::set<FluentSignature> inertial_fluents;

  static BackgroundTheory make(std::set<FluentSignature> inertial = {},
                               Program user_rules = {});

  bool inertial(const Term& fluent) const {
    for (const auto& sig : inertial_fluents)
      if (sig.matches(fluent)) return true;
    return false;
  }
};

// The two Table-style SDEC axioms:
//   holdsAt(F,T+1) :- initiatedAt(F,T).
//   holdsAt(F,T+1) :- holdsAt(F,T), not terminatedAt(F,T).
Program sdec_axioms();

// Typed constants occurring in the window, gathered by matching facts and
// annotation against the mode schemas and inertial signatures, merged with
// any explicitly configured domains.
std::map<std::string, std::set<Term>> window_type_domains(const Window& w,
                                                          const BackgroundTheory& b,
                                                          const LanguageConfig& cfg);

// Closed-world scope: every grounding of a declared inertial signature over
// the window's typed constants, with distinct constants in same-typed
// argument positions. Negative examples are this set minus the annotation.
std::set<Term> fluent_scope(const Window& w, const BackgroundTheory& b,
                            const LanguageConfig& cfg);

// Validates invariants: |times| >= 2, fact timestamps within range,
// annotation fluents declared inertial, explicit negatives consistent with
// positives. Throws DataError.
void validate_window(const Window& w, const BackgroundTheory& b);

}  // namespace iled
