#include "iled/modes.hpp"

#include <algorithm>
#include <deque>

#include "iled/errors.hpp"

namespace iled {

std::string Schema::str() const {
  switch (kind) {
    case Kind::Input:
      return "+" + symbol;
    case Kind::Output:
      return "-" + symbol;
    case Kind::Ground:
      return "#" + symbol;
    case Kind::Struct:
      break;
  }
  if (args.empty()) return symbol;
  std::string s = symbol + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i].str();
  }
  return s + ")";
}

std::string ModeDeclaration::str() const {
  return std::string(head ? "modeh(" : "modeb(") + schema.str() + ").";
}

bool match_schema(const Schema& schema, const Term& atom, std::vector<SlotBinding>& out) {
  if (schema.placemarker()) {
    out.push_back({schema.kind, schema.symbol, atom});
    return true;
  }
  if (atom.is_var()) return false;
  if (atom.symbol() != schema.symbol || atom.arity() != schema.args.size()) return false;
  for (size_t i = 0; i < schema.args.size(); ++i)
    if (!match_schema(schema.args[i], atom.args()[i], out)) return false;
  return true;
}

std::vector<const ModeDeclaration*> LanguageConfig::head_modes() const {
  std::vector<const ModeDeclaration*> out;
  for (const auto& m : modes)
    if (m.head) out.push_back(&m);
  return out;
}

std::vector<const ModeDeclaration*> LanguageConfig::body_modes() const {
  std::vector<const ModeDeclaration*> out;
  for (const auto& m : modes)
    if (!m.head) out.push_back(&m);
  return out;
}

std::map<std::string, int> variable_depth(const Clause& c) {
  std::map<std::string, int> depth;
  for (const std::string& v : c.variables()) depth[v] = kUnboundedDepth;

  std::vector<std::string> head_vars;
  c.head.collect_vars(head_vars);
  std::deque<std::string> queue;
  for (const std::string& v : head_vars) {
    depth[v] = 0;
    queue.push_back(v);
  }
  // Shortest chains through shared body literals.
  std::vector<std::vector<std::string>> literal_vars;
  for (const Literal& l : c.body) {
    std::vector<std::string> vs;
    l.atom.collect_vars(vs);
    literal_vars.push_back(std::move(vs));
  }
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    for (const auto& vs : literal_vars) {
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) continue;
      for (const std::string& u : vs) {
        if (depth[u] > depth[v] + 1 && depth[v] != kUnboundedDepth) {
          depth[u] = depth[v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  return depth;
}

namespace {

// Checks the +/-/# discipline of one matched literal. `available` holds the
// variables usable as inputs at this point of the clause.
bool slots_ok(const std::vector<SlotBinding>& slots, const std::set<std::string>& available,
              std::vector<std::string>* outputs) {
  for (const SlotBinding& s : slots) {
    switch (s.kind) {
      case Schema::Kind::Input:
        if (!s.term.is_var() || !available.count(s.term.symbol())) return false;
        break;
      case Schema::Kind::Output:
        if (!s.term.is_var()) return false;
        if (outputs) outputs->push_back(s.term.symbol());
        break;
      case Schema::Kind::Ground:
        if (!s.term.ground()) return false;
        break;
      case Schema::Kind::Struct:
        break;
    }
  }
  return true;
}

}  // namespace

bool in_mode_language(const Clause& c, const LanguageConfig& cfg) {
  bool head_ok = false;
  std::set<std::string> available;
  for (const ModeDeclaration* m : cfg.head_modes()) {
    std::vector<SlotBinding> slots;
    if (!match_schema(m->schema, c.head, slots)) continue;
    bool ok = true;
    std::set<std::string> vars;
    for (const SlotBinding& s : slots) {
      if (s.kind == Schema::Kind::Ground) {
        if (!s.term.ground()) ok = false;
      } else {
        if (!s.term.is_var()) ok = false;
        vars.insert(s.term.symbol());
      }
    }
    if (ok) {
      head_ok = true;
      available = std::move(vars);
      break;
    }
  }
  if (!head_ok) return false;

  for (const Literal& l : c.body) {
    bool lit_ok = false;
    for (const ModeDeclaration* m : cfg.body_modes()) {
      std::vector<SlotBinding> slots;
      if (!match_schema(m->schema, l.atom, slots)) continue;
      std::vector<std::string> outputs;
      if (!slots_ok(slots, available, &outputs)) continue;
      for (const std::string& v : outputs) available.insert(v);
      lit_ok = true;
      break;
    }
    if (!lit_ok) return false;
  }

  auto depths = variable_depth(c);
  for (const auto& [v, d] : depths)
    if (d > cfg.depth_bound) return false;
  return true;
}

namespace {

// Deterministic variable naming: times get T, T1, T2, ...; everything else
// X, Y, Z, W, V1, V2, ...
std::string fresh_var_name(const std::string& type, size_t index_within_type) {
  if (type == "time" || type == "t") {
    if (index_within_type == 0) return "T";
    return "T" + std::to_string(index_within_type);
  }
  static const char* letters[] = {"X", "Y", "Z", "W"};
  if (index_within_type < 4) return letters[index_within_type];
  return "V" + std::to_string(index_within_type - 3);
}

// Rebuilds a term from a schema, replacing +/- slots via the mapper.
Term rebuild(const Schema& schema, const Term& t,
             std::map<std::pair<std::string, Term>, Term>& var_map,
             std::map<std::string, size_t>& counters) {
  if (schema.placemarker()) {
    if (schema.kind == Schema::Kind::Ground) return t;
    auto key = std::make_pair(schema.symbol, t);
    auto it = var_map.find(key);
    if (it != var_map.end()) return it->second;
    Term v = Term::var(fresh_var_name(schema.symbol, counters[schema.symbol]++));
    var_map.emplace(key, v);
    return v;
  }
  std::vector<Term> args;
  for (size_t i = 0; i < schema.args.size(); ++i)
    args.push_back(rebuild(schema.args[i], t.args()[i], var_map, counters));
  return Term::compound(t.symbol(), std::move(args));
}

}  // namespace

Clause variabilize(const Clause& ground_clause, const LanguageConfig& cfg) {
  std::map<std::pair<std::string, Term>, Term> var_map;  // (type, ground term) -> variable
  std::map<std::string, size_t> counters;

  auto variabilize_atom = [&](const Term& atom, bool head) -> Term {
    const auto modes = head ? cfg.head_modes() : cfg.body_modes();
    for (const ModeDeclaration* m : modes) {
      std::vector<SlotBinding> slots;
      if (match_schema(m->schema, atom, slots)) return rebuild(m->schema, atom, var_map, counters);
    }
    throw DataError("variabilize: literal matches no " + std::string(head ? "modeh" : "modeb") +
                    " schema: " + atom.str());
  };

  Clause out(variabilize_atom(ground_clause.head, true));
  for (const Literal& l : ground_clause.body)
    out.body.emplace_back(variabilize_atom(l.atom, false), l.negated);
  return out;
}

}  // namespace iled
