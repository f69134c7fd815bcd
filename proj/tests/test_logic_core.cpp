#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iled/clause.hpp"
#include "iled/errors.hpp"
#include "iled/modes.hpp"
#include "iled/parse.hpp"
#include "iled/subsume.hpp"

using namespace iled;

namespace {

// --- brute-force oracles -------------------------------------------------

// All ground instantiations of a term over a small constant pool.
void enumerate_ground(const Term& t, const std::vector<Term>& pool,
                      const std::vector<std::string>& vars, size_t idx, Substitution& s,
                      std::vector<Term>& out) {
  if (idx == vars.size()) {
    out.push_back(s.apply(t));
    return;
  }
  for (const Term& c : pool) {
    s.bind(vars[idx], c);
    enumerate_ground(t, pool, vars, idx + 1, s, out);
    s.unbind(vars[idx]);
  }
}

// Unifiability oracle: two atoms unify iff a single instantiation of their
// (shared) variables yields the same ground atom.
bool unifiable_by_enumeration(const Term& a, const Term& b, const std::vector<Term>& pool) {
  std::vector<std::string> vars;
  a.collect_vars(vars);
  b.collect_vars(vars);
  Term pair = Term::compound("pair", {a, b});
  std::vector<Term> insts;
  Substitution s;
  enumerate_ground(pair, pool, vars, 0, s, insts);
  for (const Term& inst : insts)
    if (inst.args()[0] == inst.args()[1]) return true;
  return false;
}

// Subsumption oracle: exhaustive enumeration of substitutions from c's
// variables into d's terms.
void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  for (const Term& a : t.args()) collect_subterms(a, out);
}

bool subsumes_by_enumeration(const Clause& c, const Clause& d) {
  Clause cs = c.rename_apart("_r");
  std::vector<Term> targets;
  collect_subterms(d.head, targets);
  for (const Literal& l : d.body) collect_subterms(l.atom, targets);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<std::string> vars = cs.variables();
  std::vector<size_t> choice(vars.size(), 0);
  if (targets.empty()) targets.push_back(Term::constant("c0"));
  while (true) {
    Substitution s;
    for (size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], targets[choice[i]]);
    Clause inst = cs.apply(s);
    bool head_ok = inst.head == d.head;
    bool body_ok = true;
    for (const Literal& l : inst.body) {
      bool found = false;
      for (const Literal& dl : d.body)
        if (l == dl) found = true;
      if (!found) {
        body_ok = false;
        break;
      }
    }
    if (head_ok && body_ok) return true;
    size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++choice[i] < targets.size()) break;
      choice[i] = 0;
    }
    if (i == vars.size()) return false;
  }
}

// --- random generators ----------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  size_t below(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(gen); }
};

Term random_atom(Rng& rng, int max_vars, bool allow_nested) {
  static const char* preds[] = {"p", "q", "r"};
  static const char* consts[] = {"a", "b", "c"};
  static const char* vars[] = {"X", "Y", "Z"};
  size_t arity = rng.below(3);
  std::vector<Term> args;
  for (size_t i = 0; i < arity; ++i) {
    size_t pick = rng.below(allow_nested ? 5 : 4);
    if (pick < 2)
      args.push_back(Term::constant(consts[rng.below(3)]));
    else if (pick < 4)
      args.push_back(Term::var(vars[rng.below(static_cast<size_t>(max_vars))]));
    else
      args.push_back(Term::compound("f", {Term::var(vars[rng.below(static_cast<size_t>(max_vars))])}));
  }
  return Term::compound(preds[rng.below(3)], std::move(args));
}

Clause random_clause(Rng& rng, size_t max_body) {
  Clause c(random_atom(rng, 3, false));
  size_t n = rng.below(max_body + 1);
  for (size_t i = 0; i < n; ++i) c.body.emplace_back(random_atom(rng, 3, false), rng.below(4) == 0);
  return c;
}

LanguageConfig fighting_modes() {
  ModeFile mf = parse_modes(
      "modeh(initiatedAt(fighting(+pid,+pid),+time)).\n"
      "modeh(terminatedAt(fighting(+pid,+pid),+time)).\n"
      "modeb(happensAt(walking(+pid),+time)).\n"
      "modeb(happensAt(abrupt(+pid),+time)).\n"
      "modeb(happensAt(active(+pid),+time)).\n"
      "modeb(happensAt(running(+pid),+time)).\n"
      "modeb(happensAt(inactive(+pid),+time)).\n"
      "modeb(holdsAt(close(+pid,+pid,#dist),+time)).\n");
  return mf.config;
}

}  // namespace

TEST_CASE("unify identity and forced bindings") {
  Term a = parse_term("p(X)");
  CHECK(unify(a, a).has_value());
  CHECK(unify(a, a)->empty());

  auto s = unify(parse_term("p(X,a)"), parse_term("p(b,Y)"));
  REQUIRE(s.has_value());
  CHECK(s->apply(Term::var("X")) == Term::constant("b"));
  CHECK(s->apply(Term::var("Y")) == Term::constant("a"));

  CHECK_FALSE(unify(parse_term("p(a)"), parse_term("p(b)")).has_value());
  CHECK_FALSE(unify(parse_term("p(X)"), parse_term("q(X)")).has_value());
  // occurs check
  CHECK_FALSE(unify(parse_term("p(X,X)"), parse_term("p(Y,f(Y))")).has_value());
}

TEST_CASE("unify agrees with ground-instantiation oracle") {
  Rng rng(20260810);
  std::vector<Term> pool{Term::constant("a"), Term::constant("b"), Term::constant("c")};
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Term a = random_atom(rng, 2, true);
    Term b = random_atom(rng, 2, true);
    bool fast = unify(a, b).has_value();
    bool slow = unifiable_by_enumeration(a, b, pool);
    // The oracle can misjudge unifiable pairs that need deeper terms than the
    // flat pool offers (nested f(X) against a variable is fine: a variable's
    // instances range over the pool only). Restrict to flat pairs for exact
    // agreement; nested ones must at least satisfy fast => some shared shape.
    CAPTURE(a.str());
    CAPTURE(b.str());
    bool nested = a.str().find("f(") != std::string::npos || b.str().find("f(") != std::string::npos;
    if (!nested) {
      CHECK(fast == slow);
      ++checked;
    } else if (slow) {
      CHECK(fast);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("theta subsumption: paper example and basics") {
  Clause c2 = parse_clause("terminatedAt(fighting(X,Y),T) :- happensAt(walking(X),T).");
  Clause c2p = parse_clause(
      "terminatedAt(fighting(X,Y),T) :- happensAt(walking(X),T), not holdsAt(close(X,Y,23),T).");
  CHECK(theta_subsumes(c2, c2p));
  CHECK_FALSE(theta_subsumes(c2p, c2));

  // any clause subsumes itself
  CHECK(theta_subsumes(c2p, c2p));

  // negation flags respected
  Clause neg = parse_clause("p(X) :- not q(X).");
  Clause pos = parse_clause("p(X) :- q(X).");
  CHECK_FALSE(theta_subsumes(neg, pos));
  CHECK_FALSE(theta_subsumes(pos, neg));
}

TEST_CASE("theta subsumption agrees with substitution enumeration") {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    Clause c = random_clause(rng, 3);
    Clause d = random_clause(rng, 4);
    CAPTURE(c.str());
    CAPTURE(d.str());
    CHECK(theta_subsumes(c, d) == subsumes_by_enumeration(c, d));
  }
}

TEST_CASE("theta subsumption is reflexive and transitive on random triples") {
  Rng rng(7);
  for (int i = 0; i < 150; ++i) {
    Clause a = random_clause(rng, 3);
    Clause b = random_clause(rng, 3);
    Clause c = random_clause(rng, 3);
    CHECK(theta_subsumes(a, a));
    if (theta_subsumes(a, b) && theta_subsumes(b, c)) {
      CAPTURE(a.str());
      CAPTURE(b.str());
      CAPTURE(c.str());
      CHECK(theta_subsumes(a, c));
    }
  }
}

TEST_CASE("program subsumption") {
  Program empty;
  Program p = parse_program("p(X) :- q(X).\nr(a).\n");
  CHECK(theta_subsumes_program(empty, p));
  CHECK(theta_subsumes_program(p, p));
  Program q = parse_program("p(X) :- q(X), r(X).\n");
  CHECK_FALSE(theta_subsumes_program(q, p));
  // {C} vs {C, D}
  CHECK(theta_subsumes_program(Program{{p.clauses[0]}}, Program{{p.clauses[0], q.clauses[0]}}));
}

TEST_CASE("variable depth") {
  Clause all_head = parse_clause("initiatedAt(f(X,Y),T) :- happensAt(a(X),T).");
  auto d1 = variable_depth(all_head);
  CHECK(d1["X"] == 0);
  CHECK(d1["Y"] == 0);
  CHECK(d1["T"] == 0);

  Clause chain = parse_clause("h(X) :- p(X,Y), q(Y,Z).");
  auto d2 = variable_depth(chain);
  CHECK(d2["X"] == 0);
  CHECK(d2["Y"] == 1);
  CHECK(d2["Z"] == 2);

  Clause unreachable = parse_clause("h(X) :- p(Z).");
  auto d3 = variable_depth(unreachable);
  CHECK(d3["Z"] == kUnboundedDepth);
}

TEST_CASE("variable depth agrees with exhaustive shortest-chain search") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    Clause c = random_clause(rng, 4);
    auto fast = variable_depth(c);
    // Bellman-Ford style relaxation as the oracle.
    std::map<std::string, int> slow;
    for (const auto& v : c.variables()) slow[v] = kUnboundedDepth;
    std::vector<std::string> hv;
    c.head.collect_vars(hv);
    for (const auto& v : hv) slow[v] = 0;
    for (size_t pass = 0; pass < slow.size() + 1; ++pass) {
      for (const Literal& l : c.body) {
        std::vector<std::string> vs;
        l.atom.collect_vars(vs);
        int best = kUnboundedDepth;
        for (const auto& v : vs) best = std::min(best, slow[v]);
        if (best == kUnboundedDepth) continue;
        for (const auto& v : vs) slow[v] = std::min(slow[v], best + 1);
      }
    }
    CAPTURE(c.str());
    CHECK(fast == slow);
  }
}

TEST_CASE("mode language membership") {
  LanguageConfig cfg = fighting_modes();

  // the four fighting clauses of the synthetic-data experiments
  const char* defs[] = {
      "initiatedAt(fighting(X,Y),T) :- happensAt(active(X),T), not happensAt(inactive(Y),T), "
      "holdsAt(close(X,Y,23),T).",
      "initiatedAt(fighting(X,Y),T) :- happensAt(abrupt(X),T), not happensAt(inactive(Y),T), "
      "holdsAt(close(X,Y,23),T).",
      "terminatedAt(fighting(X,Y),T) :- happensAt(walking(X),T), not holdsAt(close(X,Y,23),T).",
      "terminatedAt(fighting(X,Y),T) :- happensAt(running(X),T), not holdsAt(close(X,Y,23),T).",
  };
  for (const char* d : defs) {
    CAPTURE(d);
    CHECK(in_mode_language(parse_clause(d), cfg));
  }

  // variable in a # position
  CHECK_FALSE(in_mode_language(
      parse_clause("initiatedAt(fighting(X,Y),T) :- holdsAt(close(X,Y,D),T)."), cfg));
  // input variable not available from the head
  CHECK_FALSE(in_mode_language(
      parse_clause("initiatedAt(fighting(X,Y),T) :- happensAt(walking(Z),T)."), cfg));
  // head not matching any modeh
  CHECK_FALSE(in_mode_language(parse_clause("holdsAt(fighting(X,Y),T) :- happensAt(walking(X),T)."), cfg));
}

TEST_CASE("mode language: constructive samples pass, mutations fail") {
  LanguageConfig cfg = fighting_modes();
  Rng rng(5);
  const char* events[] = {"walking", "abrupt", "active", "running", "inactive"};
  for (int i = 0; i < 200; ++i) {
    // constructively built clause
    Clause c(rng.below(2) == 0 ? parse_term("initiatedAt(fighting(X,Y),T)")
                               : parse_term("terminatedAt(fighting(X,Y),T)"));
    size_t n = 1 + rng.below(3);
    bool has_close = false;
    for (size_t j = 0; j < n; ++j) {
      if (rng.below(4) == 0 && !has_close) {
        c.body.emplace_back(parse_term("holdsAt(close(X,Y,23),T)"), rng.below(2) == 0);
        has_close = true;
      } else {
        std::string ev = events[rng.below(5)];
        std::string var = rng.below(2) == 0 ? "X" : "Y";
        c.body.emplace_back(parse_term("happensAt(" + ev + "(" + var + "),T)"), rng.below(3) == 0);
      }
    }
    CAPTURE(c.str());
    CHECK(in_mode_language(c, cfg));
    if (has_close) {
      // mutate: swap the ground # constant for a fresh variable
      Clause bad = c;
      for (Literal& l : bad.body) {
        if (l.atom.symbol() == "holdsAt") {
          Term close = l.atom.args()[0];
          l.atom = Term::compound(
              "holdsAt", {Term::compound("close", {close.args()[0], close.args()[1], Term::var("D")}),
                          l.atom.args()[1]});
        }
      }
      CAPTURE(bad.str());
      CHECK_FALSE(in_mode_language(bad, cfg));
    }
  }
}

TEST_CASE("variabilize: Table 3 kernel clause") {
  LanguageConfig cfg = fighting_modes();
  Clause ground = parse_clause(
      "initiatedAt(fighting(id3,id4),2) :- happensAt(abrupt(id3),2), happensAt(abrupt(id4),2), "
      "holdsAt(close(id3,id4,23),2).");
  Clause v = variabilize(ground, cfg);
  Clause expect = parse_clause(
      "initiatedAt(fighting(X,Y),T) :- happensAt(abrupt(X),T), happensAt(abrupt(Y),T), "
      "holdsAt(close(X,Y,23),T).");
  // exact up to renaming: mutual subsumption with equal sizes
  CHECK(theta_subsumes(v, expect));
  CHECK(theta_subsumes(expect, v));
  CHECK(v.body.size() == expect.body.size());
  CHECK(theta_subsumes(v, ground));
  CHECK(in_mode_language(v, cfg));
}

TEST_CASE("variabilize: all-# schema clause is unchanged") {
  ModeFile mf = parse_modes("modeh(alarm(#level)).\nmodeb(reading(#level)).\n");
  Clause g = parse_clause("alarm(high) :- reading(high).");
  CHECK(variabilize(g, mf.config) == g);
}

TEST_CASE("variabilize: unmatched literal raises") {
  LanguageConfig cfg = fighting_modes();
  CHECK_THROWS_AS(variabilize(parse_clause("initiatedAt(fighting(id1,id2),1) :- happensAt(jump(id1),1)."), cfg),
                  DataError);
}

TEST_CASE("variabilize subsumes its ground input on random schema-conforming clauses") {
  LanguageConfig cfg = fighting_modes();
  Rng rng(13);
  const char* events[] = {"walking", "abrupt", "active", "running", "inactive"};
  const char* ids[] = {"id1", "id2", "id3", "id4"};
  for (int i = 0; i < 1000; ++i) {
    std::string a = ids[rng.below(4)], b = ids[rng.below(4)];
    std::string t = std::to_string(1 + rng.below(5));
    Clause g(parse_term((rng.below(2) ? "initiatedAt" : "terminatedAt") +
                        std::string("(fighting(") + a + "," + b + ")," + t + ")"));
    size_t n = 1 + rng.below(3);
    for (size_t j = 0; j < n; ++j) {
      if (rng.below(3) == 0)
        g.body.emplace_back(parse_term("holdsAt(close(" + a + "," + b + ",23)," + t + ")"),
                            rng.below(2) == 0);
      else
        g.body.emplace_back(
            parse_term("happensAt(" + std::string(events[rng.below(5)]) + "(" +
                       (rng.below(2) ? a : b) + ")," + t + ")"),
            rng.below(3) == 0);
    }
    Clause v = variabilize(g, cfg);
    CAPTURE(g.str());
    CAPTURE(v.str());
    CHECK(theta_subsumes(v, g));
    CHECK(in_mode_language(v, cfg));
  }
}

TEST_CASE("clause grammar round trip") {
  const char* lines[] = {
      "p(a).",
      "p(X) :- q(X), not r(X,b).",
      "initiatedAt(fighting(X,Y),T) :- happensAt(abrupt(X),T), holdsAt(close(X,Y,23),T).",
      "holdsAt(F,T+1) :- initiatedAt(F,T).",
      "false :- p(X), q(X).",
  };
  for (const char* l : lines) {
    Clause c = parse_clause(l);
    CHECK(parse_clause(c.str()) == c);
  }
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_WITH_AS(parse_clause("p(a"), doctest::Contains("line 1"), DataError);
  CHECK_THROWS_AS(parse_program("p(a). q("), DataError);
}
