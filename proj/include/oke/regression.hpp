#pragma once

#include "oke/scenario.hpp"

namespace oke {

// ─── Regression ─────────────────────────────────────────────────────────────
//
// Rewrites dynamic operators away, leaving an equivalent static formula over
// Know and the connectives. With o_i the reading senseOf(a, i):
//
//   [a] g                 =  g                                 (g objective)
//   [a] (g ∘ h)           =  [a]g ∘ [a]h                       (∘ any connective)
//   [a] K_i g  at the top =  o_i ∧ K_i(o_i -> [a]g)
//   [a] K_i g  nested     =  o_i -> K_i(o_i -> [a]g)
//
// The top-level conjunct asserts that the reading actually happened; at
// nested positions the operator is evaluated at an agent's alternative
// worlds, where a false reading leaves no compatible world and the claim
// holds vacuously, hence the guard instead of a conjunct. Only-knowing
// operators are outside this fragment.

// Eliminates every dynamic operator in f. Pure: formulas without dynamic
// operators come back unchanged (structurally), so the rewrite is idempotent.
Formula regress(const Formula& f, const Scenario& s);

// The two sides of deciding "after action a, the root agent knows alpha":
// worldPart is the root agent's reading of a (required of the real world) and
// epistemicPart is K_root(reading -> regressed alpha), a dynamic-free formula.
struct DynamicQuery {
  Formula worldPart;
  Formula epistemicPart;
};

// Pre: alpha mentions only Know modalities and connectives.
DynamicQuery queryAfterObservation(const Scenario& s, const ActionId& a,
                                   const Formula& alpha);

}  // namespace oke
