#include "oke/reduction.hpp"

#include <cassert>
#include <map>

#include "oke/propcore.hpp"
#include "oke/regression.hpp"

namespace oke {

namespace {

class Reducer {
 public:
  Reducer(const Scenario& s, ReductionMode mode) : s_(s), mode_(mode) {}

  Formula reduce(const Formula& f) {
    if (f.isObjective()) return f;
    auto it = memo_.find(f.identity());
    if (it != memo_.end()) return it->second;
    Formula out = compute(f);
    memo_.emplace(f.identity(), out);
    return out;
  }

 private:
  Formula compute(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Not:
        return Formula::negate(reduce(f.child()));
      case K::And:
        return Formula::conj(reduce(f.left()), reduce(f.right()));
      case K::Or:
        return Formula::disj(reduce(f.left()), reduce(f.right()));
      case K::Implies:
        return Formula::implies(reduce(f.left()), reduce(f.right()));
      case K::Know: {
        const Formula& kb = kbOf(f.agent());
        Formula body = reduce(f.child());
        if (mode_ == ReductionMode::ImplicationForm) {
          return Formula::implies(kb, body);
        }
        return entails(kb, body) ? Formula::truth() : Formula::falsity();
      }
      case K::OnlyKnow:
        throw ScopeError("reduction does not accept only-knowing operators: " +
                         render(f));
      case K::Dyn:
        throw ScopeError("reduction takes dynamic-free queries; regress first: " +
                         render(f));
      default:
        return f;  // objective leaves are handled by the caller
    }
  }

  const Formula& kbOf(const AgentId& agent) const {
    if (agent == s_.rootAgent) return s_.kbRoot;
    if (agent == s_.otherAgent) return s_.kbNested;
    throw ValidationError("unknown agent '" + agent.name + "' in query");
  }

  const Scenario& s_;
  ReductionMode mode_;
  std::map<const void*, Formula> memo_;
};

}  // namespace

ReducedQuery represent(const Formula& alpha, const Scenario& s, ReductionMode mode) {
  Formula out = Reducer(s, mode).reduce(alpha);
  assert(out.isObjective());
  return ReducedQuery{alpha, out, mode};
}

bool entailsKnow(const Scenario& s, const Formula& alpha, ReductionMode mode) {
  Formula reduced = represent(alpha, s, mode).objectiveResult;
  return entails(s.kbRoot, reduced);
}

bool decideQuery(const Scenario& s, const Formula& query, ReductionMode mode) {
  Formula reduced = represent(query, s, mode).objectiveResult;
  return entails(s.realWorld, reduced);
}

bool checkDynamicEntailment(const Scenario& s, const ActionId& a, const Formula& alpha,
                            ReductionMode mode) {
  DynamicQuery q = queryAfterObservation(s, a, alpha);
  if (!entails(s.realWorld, q.worldPart)) return false;
  // q.epistemicPart is K_root(reading -> ...); entailsKnow supplies the
  // same root-level treatment for both modes.
  assert(q.epistemicPart.kind() == Formula::Kind::Know);
  return entailsKnow(s, q.epistemicPart.child(), mode);
}

}  // namespace oke
