#pragma once

#include <string>
#include <vector>

#include "iled/clause.hpp"
#include "iled/modes.hpp"
#include "iled/window.hpp"

namespace iled {

// Shared textual grammar:
//   head :- lit1, ..., litn.      clauses
//   atom.                         facts
//   not atom.                     explicit negatives (window narratives)
//   % comment to end of line
// Mode files use modeh(...)/modeb(...) declarations with +type/-type/#type
// placemarkers, plus optional inertial(fluent(type,...)), depth(i) and
// domain(type,constant) facts.
// Window files: `window <id> <t0> <t1>.` followed by narrative facts, then
// a `%% annotation` line and positive holdsAt atoms.

Term parse_term(const std::string& text);
Clause parse_clause(const std::string& text);
Program parse_program(const std::string& text);

struct ModeFile {
  LanguageConfig config;
  std::set<FluentSignature> inertial;  // derived from modeh schemas plus declarations
};
ModeFile parse_modes(const std::string& text);

struct BackgroundFile {
  Program user_rules;
  std::set<FluentSignature> inertial;
};
BackgroundFile parse_background(const std::string& text);

std::vector<Window> parse_windows(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace iled
