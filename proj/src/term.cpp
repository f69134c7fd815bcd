#include "iled/term.hpp"

#include <algorithm>
#include <cstdlib>

namespace iled {

std::optional<long long> Term::as_int() const {
  if (kind_ != Kind::Constant || symbol_.empty()) return std::nullopt;
  size_t i = symbol_[0] == '-' ? 1 : 0;
  if (i == symbol_.size()) return std::nullopt;
  for (size_t k = i; k < symbol_.size(); ++k)
    if (!isdigit(static_cast<unsigned char>(symbol_[k]))) return std::nullopt;
  return std::strtoll(symbol_.c_str(), nullptr, 10);
}

bool Term::ground() const {
  if (kind_ == Kind::Variable) return false;
  for (const Term& a : args_)
    if (!a.ground()) return false;
  return true;
}

void Term::collect_vars(std::vector<std::string>& out) const {
  if (kind_ == Kind::Variable) {
    if (std::find(out.begin(), out.end(), symbol_) == out.end()) out.push_back(symbol_);
    return;
  }
  for (const Term& a : args_) a.collect_vars(out);
}

bool Term::operator==(const Term& o) const {
  return kind_ == o.kind_ && symbol_ == o.symbol_ && args_ == o.args_;
}

bool Term::operator<(const Term& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  // Numeric constants order numerically so that time points sort naturally.
  if (kind_ == Kind::Constant) {
    auto a = as_int(), b = o.as_int();
    if (a && b) return *a < *b;
    if (a != b) return a.has_value();  // numbers before symbols
  }
  if (symbol_ != o.symbol_) return symbol_ < o.symbol_;
  return args_ < o.args_;
}

std::string Term::str() const {
  if (kind_ != Kind::Compound) return symbol_;
  if (symbol_ == "plus" && args_.size() == 2) return args_[0].str() + "+" + args_[1].str();
  std::string s = symbol_;
  s += '(';
  for (size_t i = 0; i < args_.size(); ++i) {
    if (i) s += ',';
    s += args_[i].str();
  }
  s += ')';
  return s;
}

const Term* Substitution::lookup(const std::string& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* b = lookup(t.symbol());
      if (!b) return t;
      return apply(*b);
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(apply(a));
      return Term::compound(t.symbol(), std::move(args));
    }
  }
  return t;
}

namespace {

bool occurs(const std::string& v, const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      if (t.symbol() == v) return true;
      const Term* b = s.lookup(t.symbol());
      return b && occurs(v, *b, s);
    }
    case Term::Kind::Constant:
      return false;
    case Term::Kind::Compound:
      for (const Term& a : t.args())
        if (occurs(v, a, s)) return true;
      return false;
  }
  return false;
}

Term walk(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (cur->is_var()) {
    const Term* b = s.lookup(cur->symbol());
    if (!b) break;
    cur = b;
  }
  return *cur;
}

}  // namespace

bool unify_into(const Term& a, const Term& b, Substitution& subst) {
  Term x = walk(a, subst);
  Term y = walk(b, subst);
  if (x.is_var() && y.is_var() && x.symbol() == y.symbol()) return true;
  if (x.is_var()) {
    if (occurs(x.symbol(), y, subst)) return false;
    subst.bind(x.symbol(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs(y.symbol(), x, subst)) return false;
    subst.bind(y.symbol(), x);
    return true;
  }
  if (x.kind() != y.kind() || x.symbol() != y.symbol() || x.arity() != y.arity()) return false;
  for (size_t i = 0; i < x.arity(); ++i)
    if (!unify_into(x.args()[i], y.args()[i], subst)) return false;
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

bool match_into(const Term& pattern, const Term& target, Substitution& subst) {
  if (pattern.is_var()) {
    const Term* b = subst.lookup(pattern.symbol());
    if (b) return *b == target;
    subst.bind(pattern.symbol(), target);
    return true;
  }
  if (pattern.kind() != target.kind() || pattern.symbol() != target.symbol() ||
      pattern.arity() != target.arity())
    return false;
  for (size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], subst)) return false;
  return true;
}

Term eval_arith(const Term& t) {
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(eval_arith(a));
  if (t.symbol() == "plus" && args.size() == 2) {
    auto a = args[0].as_int(), b = args[1].as_int();
    if (a && b) return Term::number(*a + *b);
  }
  return Term::compound(t.symbol(), std::move(args));
}

}  // namespace iled
