#include "iled/clause.hpp"

namespace iled {

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> vars;
  head.collect_vars(vars);
  for (const Literal& l : body) l.atom.collect_vars(vars);
  return vars;
}

Clause Clause::apply(const Substitution& s) const {
  Clause out(s.apply(head));
  out.body.reserve(body.size());
  for (const Literal& l : body) out.body.emplace_back(s.apply(l.atom), l.negated);
  return out;
}

Clause Clause::rename_apart(const std::string& suffix) const {
  Substitution s;
  for (const std::string& v : variables()) s.bind(v, Term::var(v + suffix));
  return apply(s);
}

bool Clause::operator<(const Clause& o) const {
  if (!(head == o.head)) return head < o.head;
  return body < o.body;
}

std::string Clause::str() const {
  std::string s = head.str();
  if (!body.empty()) {
    s += " :- ";
    for (size_t i = 0; i < body.size(); ++i) {
      if (i) s += ", ";
      s += body[i].str();
    }
  }
  s += '.';
  return s;
}

size_t Program::literal_count() const {
  size_t n = 0;
  for (const Clause& c : clauses) n += 1 + c.body.size();
  return n;
}

std::string Program::str() const {
  std::string s;
  for (const Clause& c : clauses) {
    s += c.str();
    s += '\n';
  }
  return s;
}

}  // namespace iled
