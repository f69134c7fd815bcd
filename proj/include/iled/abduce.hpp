#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iled/solver.hpp"

namespace iled {

// ALP task: find a set of ground abducible atoms Delta with
// background ∪ Delta ⊨ goals (credulous stable-model entailment).
// Candidate atoms are either given explicitly or enumerated from abducible
// schemas over the typed domains of ground_opts.
struct AbductiveTask {
  Program background;
  std::vector<Schema> abducibles;     // every position a placemarker or structure
  std::vector<Term> candidate_atoms;  // used instead of schema enumeration when nonempty
  std::vector<Literal> goals;
  GroundOptions ground_opts;
  size_t atom_cap = 24;  // exhaustive-mode fallback cap
};

struct AbductiveSolution {
  std::vector<Term> delta;  // sorted
  size_t cardinality = 0;
  std::string tiebreak_key;

  static AbductiveSolution make(std::vector<Term> atoms);
  bool operator==(const AbductiveSolution& o) const { return delta == o.delta; }
  bool operator<(const AbductiveSolution& o) const;
};

// Cardinality-minimal abduction by iterative deepening over candidate
// subsets; ties broken by the lexicographic serialization of Delta. Returns
// nullopt when no explanation exists. Throws ResourceError past node_cap.
std::optional<AbductiveSolution> abduce(const AbductiveTask& task, bool minimize = true,
                                        size_t node_cap = size_t{1} << 20);

// Every subset-minimal explanation, each verified irreducible.
std::vector<AbductiveSolution> abduce_all_minimal(const AbductiveTask& task,
                                                  size_t node_cap = size_t{1} << 20);

// Candidate enumeration helper (deterministic order: time point, predicate,
// serialization).
std::vector<Term> enumerate_abducibles(const AbductiveTask& task);

}  // namespace iled
