#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iled/clause.hpp"
#include "iled/modes.hpp"

namespace iled {

struct GroundClause {
  int head = -1;  // -1 for integrity constraints (head `false`)
  std::vector<int> body_pos;
  std::vector<int> body_neg;
};

// A variable-free program with atoms interned to dense ids.
struct GroundProgram {
  std::vector<Term> atoms;       // id -> atom
  std::map<Term, int> atom_ids;  // atom -> id
  std::vector<GroundClause> rules;
  std::vector<GroundClause> constraints;

  int intern(const Term& atom);
  int lookup(const Term& atom) const;  // -1 if unknown
  std::string str() const;             // shared clause grammar
};

struct GroundOptions {
  std::map<std::string, std::set<Term>> domains;  // type -> constants
  std::set<Term> window_constants;                // untyped pool additions
  std::map<std::string, std::string> var_types;   // variable name -> type, applied clause-wide
  size_t max_atoms = 200000;
};

// Grounds p over the typed domains plus the untyped constant pool. Variables
// bound by positive body literals take values from the derivable universe
// (bottom-up fixpoint); every other variable uses its declared type domain,
// or the full pool when untyped. A variable occurring only under negation
// makes the clause unsafe.
GroundProgram ground(const Program& p, const GroundOptions& opts);

using Interpretation = std::set<int>;

// Exhaustive-mode stable model computation, guarded by the Herbrand cap.
// Branches on the negated derivable atoms and verifies each candidate as the
// minimal model of its own reduct; integrity constraints eliminate violating
// models.
std::vector<Interpretation> stable_models(const GroundProgram& g, size_t atom_cap = 24);

// Direct transcription of the stable-model definition, used as the guard and
// by test oracles: I is the least model of the reduct of g by I and violates
// no constraint.
bool is_stable_model(const GroundProgram& g, const Interpretation& i);

// Least model of the Horn part, with `assumptions` added as facts.
Interpretation least_model(const GroundProgram& g, const Interpretation& assumptions = {});

// Perfect-model evaluation for (locally) stratified ground programs:
// nullopt when some dependency cycle passes through negation. Constraints
// are not applied here.
std::optional<Interpretation> stratified_model(const GroundProgram& g,
                                               const Interpretation& assumptions = {});

bool violates_constraints(const GroundProgram& g, const Interpretation& i);

// True iff some stable model of p satisfies every literal of q. Uses the
// stratified path when available, otherwise the capped exhaustive mode.
bool credulous_entails(const Program& p, const std::vector<Literal>& q,
                       const GroundOptions& opts, size_t atom_cap = 24);

bool satisfies(const GroundProgram& g, const Interpretation& i, const std::vector<Literal>& q);

}  // namespace iled
