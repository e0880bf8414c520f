#include "oke/regression.hpp"

namespace oke {

namespace {

// Pushes [a] through g. `nested` says whether this occurrence sits inside
// some Know operator, which selects the guarded form for further modalities.
Formula pushDyn(const ActionId& a, const Formula& g, bool nested, const Scenario& s) {
  using K = Formula::Kind;
  if (g.isObjective()) return g;
  switch (g.kind()) {
    case K::Not:
      return Formula::negate(pushDyn(a, g.child(), nested, s));
    case K::And:
      return Formula::conj(pushDyn(a, g.left(), nested, s),
                           pushDyn(a, g.right(), nested, s));
    case K::Or:
      return Formula::disj(pushDyn(a, g.left(), nested, s),
                           pushDyn(a, g.right(), nested, s));
    case K::Implies:
      return Formula::implies(pushDyn(a, g.left(), nested, s),
                              pushDyn(a, g.right(), nested, s));
    case K::Know: {
      const Formula& reading = s.senseOf(a, g.agent());
      Formula inner = Formula::know(
          g.agent(), Formula::implies(reading, pushDyn(a, g.child(), true, s)));
      return nested ? Formula::implies(reading, inner)
                    : Formula::conj(reading, inner);
    }
    default:
      throw ScopeError("regression cannot rewrite: " + render(g));
  }
}

Formula walk(const Formula& f, bool underKnow, const Scenario& s) {
  using K = Formula::Kind;
  if (!f.containsDyn()) return f;
  switch (f.kind()) {
    case K::Not:
      return Formula::negate(walk(f.child(), underKnow, s));
    case K::And:
      return Formula::conj(walk(f.left(), underKnow, s), walk(f.right(), underKnow, s));
    case K::Or:
      return Formula::disj(walk(f.left(), underKnow, s), walk(f.right(), underKnow, s));
    case K::Implies:
      return Formula::implies(walk(f.left(), underKnow, s),
                              walk(f.right(), underKnow, s));
    case K::Know:
      return Formula::know(f.agent(), walk(f.child(), true, s));
    case K::Dyn:
      return pushDyn(f.action(), f.child(), underKnow, s);
    default:
      throw ScopeError("regression cannot rewrite: " + render(f));
  }
}

void requireFragment(const Formula& f, const char* op) {
  if (f.containsOnlyKnow()) {
    throw ScopeError(std::string(op) + " does not accept only-knowing operators: " +
                     render(f));
  }
}

}  // namespace

Formula regress(const Formula& f, const Scenario& s) {
  requireFragment(f, "regress");
  Formula out = walk(f, false, s);
  // The rewrite removes every dynamic operator by construction.
  if (out.containsDyn()) {
    throw ScopeError("regression left a dynamic operator in: " + render(out));
  }
  return out;
}

DynamicQuery queryAfterObservation(const Scenario& s, const ActionId& a,
                                   const Formula& alpha) {
  requireFragment(alpha, "queryAfterObservation");
  if (alpha.containsDyn()) {
    throw ScopeError("queryAfterObservation takes the body under the action, "
                     "without further dynamic operators: " + render(alpha));
  }
  const Formula& reading = s.senseOf(a, s.rootAgent);
  // alpha sits inside the constructed Know, so its own modalities take the
  // guarded nested form.
  Formula rewritten = pushDyn(a, alpha, true, s);
  Formula epistemic = Formula::know(s.rootAgent, Formula::implies(reading, rewritten));
  return DynamicQuery{reading, epistemic};
}

}  // namespace oke
