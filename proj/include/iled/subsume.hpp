#pragma once

#include <optional>

#include "iled/clause.hpp"

namespace iled {

// C theta-subsumes D iff some substitution maps head(C) onto head(D) and
// body(C) into body(D) (set inclusion, negation flags respected). C is
// standardized apart first; D's variables are left untouched.
bool theta_subsumes(const Clause& c, const Clause& d);

// Returns a witnessing substitution over C's (renamed-back) variables.
std::optional<Substitution> theta_subsumption_witness(const Clause& c, const Clause& d);

// Every clause of p1 subsumes some clause of p2.
bool theta_subsumes_program(const Program& p1, const Program& p2);

}  // namespace iled
