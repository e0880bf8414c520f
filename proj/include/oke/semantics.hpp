#pragma once

#include <map>
#include <optional>
#include <vector>

#include "oke/scenario.hpp"

namespace oke {

// A total truth assignment over a scenario's vocabulary.
struct World {
  std::map<std::string, bool> assignment;

  bool value(const std::string& atom) const;
  auto operator<=>(const World&) const = default;
};

// Pre: f objective; every atom of f assigned in w.
bool evaluate(const World& w, const Formula& f);

// The pending observation while a formula is evaluated: nothing, or a single
// action whose readings condition what each agent considers possible.
struct ObservationTrace {
  std::optional<ActionId> action;

  static ObservationTrace none() { return {}; }
  static ObservationTrace of(ActionId a) { return ObservationTrace{std::move(a)}; }
  bool pending() const { return action.has_value(); }
};

// With no pending observation all worlds are mutually compatible. Under a
// pending action, w and w2 are compatible for agent i exactly when i's
// reading holds in both worlds. An agent whose reading is false at the
// evaluation world therefore has no compatible alternatives at all, and
// knowledge claims there hold vacuously.
bool compatible(const World& w, const World& w2, const ObservationTrace& z,
                const AgentId& i, const Scenario& s);

// The epistemic state the scenario premise pins down: the root agent
// considers exactly the kb_root models possible and, at every deeper nesting
// level, models the other agent as considering exactly the kb_nested models
// possible (and is in turn modelled by kb_root again).
class CanonicalModel {
 public:
  // Enumerates all 2^|P| worlds; |P| <= 12.
  explicit CanonicalModel(const Scenario& s);

  const Scenario& scenario() const { return *scenario_; }
  const std::vector<World>& allWorlds() const { return all_; }
  const std::vector<World>& rootWorlds() const { return root_; }
  const std::vector<World>& otherWorlds() const { return other_; }

 private:
  const Scenario* scenario_;
  std::vector<World> all_;
  std::vector<World> root_;
  std::vector<World> other_;
};

// Truth at (m, w) with trace z, by direct recursion over the query. A dynamic
// operator installs its action as the pending trace; a knowledge operator
// restricts to compatible worlds and keeps the trace pending, so later
// modalities stay conditioned on the same observation. Only-knowing operators
// are outside the query fragment (throws ScopeError); a dynamic operator
// under an already pending trace is unsatisfiable by definition.
bool satisfies(const CanonicalModel& m, const World& w, const ObservationTrace& z,
               const Formula& f);

// Premise |= query by exhaustive checking: true iff the query holds at every
// world satisfying real_world. Knowledge need not be true at those worlds;
// there is no truth axiom.
bool bruteForceEntails(const Scenario& s, const Formula& query);

// Exhaustive check that the only-knowing premise pins down a unique depth-one
// epistemic state: every set of worlds is tested against the only-knowing
// truth condition for kb_root. |P| <= 2.
struct StructureEnumeration {
  int candidateCount = 0;    // all sets of worlds, 2^|worlds|
  int satisfyingCount = 0;   // sets satisfying only-knowing of kb_root
  bool uniqueIsModelSet = false;  // the single hit is exactly the model set
};
StructureEnumeration enumerateDepthOneStructures(const Scenario& s);

}  // namespace oke
