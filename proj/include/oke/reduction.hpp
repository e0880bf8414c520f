#pragma once

#include "oke/scenario.hpp"

namespace oke {

// How knowledge subformulas are compiled into objective form.
//
//   ResSubstitution  (default) each K_i b is decided against agent i's
//                    knowledge base and replaced by the constant true or
//                    false. Negated and nested knowledge come out right, at
//                    the price of one entailment check per knowledge
//                    subformula.
//   ImplicationForm  K_root b becomes kb_root -> b', K_other b becomes
//                    kb_nested -> b'. Cheap and purely syntactic, but a
//                    negation over a knowledge operator then asserts the
//                    knowledge base rather than refuting the knowledge, so
//                    non-beliefs are unprovable in this mode.
enum class ReductionMode { ResSubstitution, ImplicationForm };

struct ReducedQuery {
  Formula source;
  Formula objectiveResult;
  ReductionMode mode;
};

// Compiles a dynamic-free query to an objective formula. Objective input
// comes back unchanged. Knowledge operators at any nesting level resolve
// against kb_root for the root agent and kb_nested for the other agent (the
// root agent's model of the other is taken at face value at every level).
// Results per subformula are memoized within the call.
ReducedQuery represent(const Formula& alpha, const Scenario& s,
                       ReductionMode mode = ReductionMode::ResSubstitution);

// Does the premise make the root agent know alpha?
bool entailsKnow(const Scenario& s, const Formula& alpha,
                 ReductionMode mode = ReductionMode::ResSubstitution);

// Decides premise |= query for an arbitrary dynamic-free query, evaluated as
// stated (not wrapped in a knowledge operator): the compiled query must
// follow from real_world.
bool decideQuery(const Scenario& s, const Formula& query,
                 ReductionMode mode = ReductionMode::ResSubstitution);

// Does the premise make the root agent know alpha after observing a?
// Decides both halves of the dynamic query: the root agent's reading holds
// in the real world, and the regressed knowledge claim is entailed.
bool checkDynamicEntailment(const Scenario& s, const ActionId& a, const Formula& alpha,
                            ReductionMode mode = ReductionMode::ResSubstitution);

}  // namespace oke
