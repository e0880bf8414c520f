#pragma once

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "oke/formula.hpp"

namespace oke {

// A signed propositional atom.
struct Literal {
  std::string atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

// Definitional clause form of an objective formula: equisatisfiable with the
// source and linear in its size. Auxiliary definition atoms are named "_t<n>"
// and can never collide with scenario vocabulary, whose atoms start with a
// lower case letter.
struct ClauseSet {
  std::vector<std::vector<Literal>> clauses;
  std::set<std::string> auxiliaries;
};

// Total truth assignment, usable as a satisfiability witness.
using Assignment = std::map<std::string, bool>;

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;  // present iff satisfiable
};

// Pre: f is objective (throws ScopeError otherwise).
ClauseSet toClauses(const Formula& f);

// Complete decision by backtracking search with unit propagation. Branching
// is deterministic: atoms in lexicographic order, positive value first, so
// witnesses are reproducible. The witness covers every atom of f plus
// extraVocabulary; atoms the search never constrained are reported false.
SatResult isSatisfiable(const Formula& f,
                        const std::set<std::string>& extraVocabulary = {});

bool isValid(const Formula& f);

// premise |= goal, both objective.
bool entails(const Formula& premise, const Formula& goal);

// Standard DIMACS output with a comment block mapping variables to atoms.
void writeDimacs(const ClauseSet& cs, std::ostream& out);

}  // namespace oke
