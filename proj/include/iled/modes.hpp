#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iled/clause.hpp"

namespace iled {

// A schema node is a placemarker (+type input, -type output, #type ground)
// or a structure whose arguments are schema nodes.
struct Schema {
  enum class Kind : uint8_t { Input, Output, Ground, Struct };
  Kind kind = Kind::Struct;
  std::string symbol;  // type name for placemarkers, functor/constant otherwise
  std::vector<Schema> args;

  static Schema input(std::string type) { return {Kind::Input, std::move(type), {}}; }
  static Schema output(std::string type) { return {Kind::Output, std::move(type), {}}; }
  static Schema ground(std::string type) { return {Kind::Ground, std::move(type), {}}; }
  static Schema structure(std::string functor, std::vector<Schema> a) {
    return {Kind::Struct, std::move(functor), std::move(a)};
  }

  bool placemarker() const { return kind != Kind::Struct; }
  std::string str() const;
};

struct ModeDeclaration {
  bool head = false;  // modeh vs modeb
  Schema schema;
  std::string str() const;
};

// One placemarker occurrence captured while matching a schema against a
// term: its kind, type, and the term (or variable) sitting at the position.
struct SlotBinding {
  Schema::Kind kind;
  std::string type;
  Term term;
};

// Matches a schema against a term structurally, collecting one SlotBinding
// per placemarker. Negation flags are handled by the caller: schemas match
// literal atoms regardless of polarity.
bool match_schema(const Schema& schema, const Term& atom, std::vector<SlotBinding>& out);

struct LanguageConfig {
  std::vector<ModeDeclaration> modes;  // declaration order is significant
  int depth_bound = 2;
  std::map<std::string, std::set<Term>> type_domains;

  std::vector<const ModeDeclaration*> head_modes() const;
  std::vector<const ModeDeclaration*> body_modes() const;
};

constexpr int kUnboundedDepth = std::numeric_limits<int>::max();

// Def-12 variable depth: head variables are at depth 0, every other
// variable is one step beyond the shallowest variable it shares a body
// literal with; unreachable variables get kUnboundedDepth.
std::map<std::string, int> variable_depth(const Clause& c);

// Depth-bounded mode-language membership: the head matches a modeh schema,
// every body literal matches a modeb schema under the +/-/# discipline, and
// all variable depths respect cfg.depth_bound.
bool in_mode_language(const Clause& c, const LanguageConfig& cfg);

// Replaces +/- position terms of a schema-conforming ground clause with
// variables (equal ground terms of the same type share one variable) and
// keeps # position terms intact. Throws DataError if a literal matches no
// schema.
Clause variabilize(const Clause& ground_clause, const LanguageConfig& cfg);

}  // namespace iled
