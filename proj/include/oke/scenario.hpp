#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oke/formula.hpp"

namespace oke {

// What each agent reads when an observational action happens. Agents without
// an entry read the trivial observation true.
struct SensingEntry {
  std::map<AgentId, Formula> perAgent;
};

// ─── Scenario ───────────────────────────────────────────────────────────────
//
// A two-agent epistemic setting. The premise every query is decided against is
//
//   real_world  ∧  O_root( kb_root ∧ O_other( kb_nested ) )
//
// read as: the facts in real_world hold, all the root agent knows is kb_root,
// and the root agent takes kb_nested to be all the other agent knows. All
// three parts are objective. The text format is line oriented:
//
//   [agents]            root = A / other = B        (defaults when omitted)
//   [atoms]             whitespace-separated names
//   [kb_root]           a formula, possibly spanning lines
//   [kb_nested]         defaults to true when omitted
//   [real_world]        defaults to true when omitted
//   [action <name>]     obs_A = <literal conjunction or true>, one line per
//                       agent; missing agents sense true
//
// '#' starts a comment. Loading validates everything eagerly: names declared,
// knowledge bases objective, readings conjunctions of literals, and
// kb_root ∧ kb_nested ∧ real_world satisfiable.
struct Scenario {
  std::set<std::string> atomVocabulary;
  AgentId rootAgent;
  AgentId otherAgent;
  Formula kbRoot = Formula::truth();
  Formula kbNested = Formula::truth();
  Formula realWorld = Formula::truth();
  std::map<ActionId, SensingEntry> actions;
  std::set<std::string> actionNames;  // keys of `actions`, kept for the parser

  // Agent i's reading for action a; true when the action does not mention i.
  // Throws ValidationError for undeclared actions.
  const Formula& senseOf(const ActionId& a, const AgentId& i) const;

  // Parser settings wired to this scenario's agents, vocabulary and actions.
  // The returned options borrow from *this; keep the scenario alive.
  ParseOptions parseOptions() const;
};

// One sensed reading, as consumed by the learning procedures. `action` names
// a declared action, or carries the reserved name "raw" for readings supplied
// directly as a literal conjunction.
struct Observation {
  ActionId action;
  Formula revealed;
};

Scenario loadScenario(std::string_view text);

// The built-in card example: two players each blindly draw one of four
// numbered cards and can look at their own card; the higher card wins.
// Atoms na1..na4 and nb1..nb4 say which card each player holds, wa/wb who
// wins. Sensing actions rho_a1..rho_a4 and rho_b1..rho_b4 reveal one
// player's card to that player alone; rho_ai_bj reveals both at once.
// real_world deals card 4 to the first player and card 3 to the second.
const Scenario& cardGameScenario();

// Observation files: one entry per line, either a declared action name or
// "raw: <literal conjunction>". Each reading must be jointly satisfiable with
// kb_root: readings extend what the root agent knows, so they may disagree
// with the current real world (noise, or another round of the game) but
// never with the knowledge base itself.
std::vector<Observation> loadObservations(std::string_view text, const Scenario& s);

Observation makeRawObservation(const Formula& reading, const Scenario& s);

}  // namespace oke
