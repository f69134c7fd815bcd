#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iled {

// First-order terms. A term is a variable, a constant, or a compound
// f(t1,...,tn). Variables start with an uppercase letter in the textual
// format, constants and functors with a lowercase letter or a digit.
// Atoms are represented as terms whose outermost symbol is the predicate.
class Term {
 public:
  enum class Kind : uint8_t { Variable, Constant, Compound };

  Term() : kind_(Kind::Constant), symbol_("nil") {}

  static Term var(std::string name) { return Term(Kind::Variable, std::move(name), {}); }
  static Term constant(std::string symbol) { return Term(Kind::Constant, std::move(symbol), {}); }
  static Term number(long long v) { return Term(Kind::Constant, std::to_string(v), {}); }
  static Term compound(std::string functor, std::vector<Term> args) {
    if (args.empty()) return constant(std::move(functor));
    return Term(Kind::Compound, std::move(functor), std::move(args));
  }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Variable; }
  bool is_const() const { return kind_ == Kind::Constant; }
  bool is_compound() const { return kind_ == Kind::Compound; }

  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& args() const { return args_; }
  size_t arity() const { return args_.size(); }

  // Integer view of a constant; nullopt for anything non-numeric.
  std::optional<long long> as_int() const;

  bool ground() const;
  void collect_vars(std::vector<std::string>& out) const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;  // total order: kind, symbol, arity, args

  std::string str() const;

 private:
  Term(Kind k, std::string s, std::vector<Term> a)
      : kind_(k), symbol_(std::move(s)), args_(std::move(a)) {}

  Kind kind_;
  std::string symbol_;
  std::vector<Term> args_;
};

// Finite map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  bool bound(const std::string& v) const { return bindings_.count(v) != 0; }
  const Term* lookup(const std::string& v) const;
  void bind(std::string v, Term t) { bindings_.emplace(std::move(v), std::move(t)); }
  void unbind(const std::string& v) { bindings_.erase(v); }
  size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  // Applies the substitution, walking chains of variable bindings.
  Term apply(const Term& t) const;

  const std::map<std::string, Term>& bindings() const { return bindings_; }

 private:
  std::map<std::string, Term> bindings_;
};

// Most general unifier with occurs check; absence means not unifiable.
std::optional<Substitution> unify(const Term& a, const Term& b);
bool unify_into(const Term& a, const Term& b, Substitution& subst);

// One-way matching: extends subst so that pattern*subst == target, never
// binding variables of the target. Used by subsumption and fact matching.
bool match_into(const Term& pattern, const Term& target, Substitution& subst);

// Evaluates integer successor terms plus(T,k) once T is a numeric constant.
Term eval_arith(const Term& t);

}  // namespace iled
