#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oke/errors.hpp"

namespace oke {

// An agent symbol. Scenarios declare exactly two; the conventional names are
// A (the root agent) and B. Compared by name.
struct AgentId {
  std::string name;
  auto operator<=>(const AgentId&) const = default;
};

// An observational action symbol, referring to an entry in a scenario's
// action table.
struct ActionId {
  std::string name;
  auto operator<=>(const ActionId&) const = default;
};

// ─── Formula ────────────────────────────────────────────────────────────────
//
// Immutable formula of the epistemic language: propositional connectives over
// atoms, plus
//
//   K_i f    agent i knows f
//   O_i f    f is all that agent i knows
//   [a] f    f holds after observation a
//
// Values are cheap shared handles over immutable nodes; copying is O(1) and
// sharing subterms is safe. Equality is structural. "p <-> q" is accepted by
// the parser but desugared to (p -> q) & (q -> p); there is no biconditional
// node.
class Formula {
 public:
  enum class Kind { Atom, True, False, Not, And, Or, Implies, Know, OnlyKnow, Dyn };

  static Formula atom(std::string name);
  static Formula truth();
  static Formula falsity();
  static Formula negate(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula know(AgentId agent, Formula f);
  static Formula onlyKnow(AgentId agent, Formula f);
  // Throws ValidationError if f already contains a dynamic operator;
  // well-formed formulas carry at most one pending observation.
  static Formula after(ActionId action, Formula f);

  Kind kind() const;

  const std::string& atomName() const;  // Kind::Atom only
  AgentId agent() const;                // Know / OnlyKnow only
  ActionId action() const;              // Dyn only
  Formula child() const;                // Not / Know / OnlyKnow / Dyn only
  Formula left() const;                 // And / Or / Implies only
  Formula right() const;                // And / Or / Implies only

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // True when the formula contains no Know, OnlyKnow or Dyn operator.
  bool isObjective() const;
  bool containsDyn() const;
  bool containsOnlyKnow() const;
  bool containsKnow() const;

  bool isLiteral() const;
  // A (possibly single-element) conjunction of literals, or the constant true.
  bool isConjunctionOfLiterals() const;

  std::set<std::string> atoms() const;

  // Modal depth as seen by agent i. Atoms and constants count 1; negation,
  // dynamic operators and same-agent modalities are transparent; binary
  // connectives take the maximum; a modality of the other agent j switches
  // the point of view to j and adds 1.
  int depth(const AgentId& i) const;

  // Stable identity of the underlying node, usable as a memoization key for
  // the lifetime of any handle to this formula.
  const void* identity() const;

  // Representation detail, declared here only so the implementation file can
  // define it; not part of the interface.
  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Settings for the formula parser. Modalities must name a declared agent;
// when a vocabulary or action set is supplied, atom and action occurrences
// are checked against it.
struct ParseOptions {
  std::vector<std::string> agents{"A", "B"};
  const std::set<std::string>* vocabulary = nullptr;
  const std::set<std::string>* actions = nullptr;
};

// Parses the concrete syntax:
//
//   atoms        [a-z][a-z0-9_]*        constants  true, false
//   connectives  !  &  |  ->  <->       (precedence: unary > & > | > -> > <->,
//                                        -> associates to the right)
//   modalities   K_A f, O_A f           (agent names as declared)
//   dynamic      [action] f
//   grouping     ( ... ),  # starts a comment through end of line
//
// Throws ParseError with a 1-based line/column on malformed input, unknown
// agents, and (when options carry them) undeclared atoms or actions.
Formula parse(std::string_view text, const ParseOptions& options = {});

// Renders with minimal parentheses; parse(render(f)) == f.
std::string render(const Formula& f);

}  // namespace oke
