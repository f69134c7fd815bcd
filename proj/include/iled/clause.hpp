#pragma once

#include <string>
#include <vector>

#include "iled/term.hpp"

namespace iled {

// A literal is an atom with a negation-as-failure flag. Clause heads are
// never negated.
struct Literal {
  Term atom;
  bool negated = false;

  Literal() = default;
  Literal(Term a, bool neg = false) : atom(std::move(a)), negated(neg) {}

  bool operator==(const Literal& o) const { return negated == o.negated && atom == o.atom; }
  bool operator!=(const Literal& o) const { return !(*this == o); }
  bool operator<(const Literal& o) const {
    if (negated != o.negated) return !negated;
    return atom < o.atom;
  }

  std::string str() const { return negated ? "not " + atom.str() : atom.str(); }
};

struct Clause {
  Term head;
  std::vector<Literal> body;

  Clause() = default;
  explicit Clause(Term h) : head(std::move(h)) {}
  Clause(Term h, std::vector<Literal> b) : head(std::move(h)), body(std::move(b)) {}

  bool fact() const { return body.empty(); }
  bool constraint() const { return head.is_const() && head.symbol() == "false"; }

  std::vector<std::string> variables() const;
  Clause apply(const Substitution& s) const;
  // Renames every variable with the given suffix.
  Clause rename_apart(const std::string& suffix) const;

  bool operator==(const Clause& o) const { return head == o.head && body == o.body; }
  bool operator<(const Clause& o) const;

  std::string str() const;
};

struct Program {
  std::vector<Clause> clauses;

  Program() = default;
  explicit Program(std::vector<Clause> cs) : clauses(std::move(cs)) {}

  bool empty() const { return clauses.empty(); }
  size_t size() const { return clauses.size(); }
  void add(Clause c) { clauses.push_back(std::move(c)); }

  // head + body literals summed over all clauses
  size_t literal_count() const;

  std::string str() const;
};

}  // namespace iled
