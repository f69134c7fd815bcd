#pragma once

#include <functional>
#include <map>
#include <set>

#include "iled/window.hpp"

namespace iled {

struct CoverageReport {
  std::set<std::pair<Term, long long>> covered_positives;
  std::set<std::pair<Term, long long>> uncovered_positives;
  std::set<std::pair<Term, long long>> covered_negatives;

  bool perfect() const { return uncovered_positives.empty() && covered_negatives.empty(); }
};

struct ClauseStatus {
  bool revisable = false;
  std::set<std::pair<Term, long long>> witnesses;
};

// Truth of an inertial fluent instance at a time point, as seen by clause
// body evaluation (either the derived state or the annotation).
using HoldsFn = std::function<bool(const Term&, long long)>;

// All constants occurring in the window (for instantiating free variables
// under negation).
std::vector<Term> window_constant_pool(const Window& w);

// Does the initiatedAt/terminatedAt clause fire for `fluent` at time t?
// Positive body literals match narrative facts (and, for inertial fluents,
// the holds relation); negative literals are closed-world.
bool clause_fires(const Clause& c, const Term& fluent, long long t, const Window& w,
                  const BackgroundTheory& b, const HoldsFn& holds,
                  const std::vector<Term>& pool);

// Forward time-stepping recognition: holdsAt(F,T+1) iff initiatedAt(F,T) or
// (holdsAt(F,T) and not terminatedAt(F,T)). The state at the window's first
// time point is seeded from the annotation. Returns the per-time state of
// inertial fluents over the closed-world scope.
std::map<long long, std::set<Term>> recognize(const Program& h, const BackgroundTheory& b,
                                              const Window& w, const LanguageConfig& cfg);

// Same, flattened to ground (fluent, time) pairs.
std::set<std::pair<Term, long long>> recognize_atoms(const Program& h, const BackgroundTheory& b,
                                                     const Window& w, const LanguageConfig& cfg);

CoverageReport covers(const Program& h, const BackgroundTheory& b, const Window& w,
                      const LanguageConfig& cfg);

// Def-5 classification of a single clause against a window: an initiatedAt
// clause is revisable when its initiations produce closed-world negatives, a
// terminatedAt clause when its terminations disprove annotated positives.
ClauseStatus classify_clause(const Clause& c, const BackgroundTheory& b, const Window& w,
                             const LanguageConfig& cfg);

// Annotated positives whose derivation uses the clause's initiations, or the
// closed-world negatives enforced by its terminations.
std::set<std::pair<Term, long long>> clause_positive_footprint(const Clause& c,
                                                               const BackgroundTheory& b,
                                                               const Window& w,
                                                               const LanguageConfig& cfg);

bool init_headed(const Clause& c);
bool term_headed(const Clause& c);

}  // namespace iled
