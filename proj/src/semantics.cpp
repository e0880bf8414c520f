#include "oke/semantics.hpp"

#include <cassert>

namespace oke {

bool World::value(const std::string& atom) const {
  auto it = assignment.find(atom);
  if (it == assignment.end()) {
    throw ValidationError("world does not assign atom '" + atom + "'");
  }
  return it->second;
}

bool evaluate(const World& w, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: return w.value(f.atomName());
    case K::True: return true;
    case K::False: return false;
    case K::Not: return !evaluate(w, f.child());
    case K::And: return evaluate(w, f.left()) && evaluate(w, f.right());
    case K::Or: return evaluate(w, f.left()) || evaluate(w, f.right());
    case K::Implies: return !evaluate(w, f.left()) || evaluate(w, f.right());
    default:
      throw ScopeError("evaluate requires an objective formula, got: " + render(f));
  }
}

bool compatible(const World& w, const World& w2, const ObservationTrace& z,
                const AgentId& i, const Scenario& s) {
  if (!z.pending()) return true;
  const Formula& reading = s.senseOf(*z.action, i);
  return evaluate(w, reading) && evaluate(w2, reading);
}

CanonicalModel::CanonicalModel(const Scenario& s) : scenario_(&s) {
  if (s.atomVocabulary.size() > 12) {
    throw ValidationError("oracle vocabulary cap exceeded: " +
                          std::to_string(s.atomVocabulary.size()) + " atoms (max 12)");
  }
  std::vector<std::string> atoms(s.atomVocabulary.begin(), s.atomVocabulary.end());
  const std::size_t n = atoms.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    World w;
    for (std::size_t i = 0; i < n; ++i) {
      w.assignment[atoms[i]] = (bits >> i) & 1;
    }
    if (evaluate(w, s.kbRoot)) root_.push_back(w);
    if (evaluate(w, s.kbNested)) other_.push_back(w);
    all_.push_back(std::move(w));
  }
}

bool satisfies(const CanonicalModel& m, const World& w, const ObservationTrace& z,
               const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: return w.value(f.atomName());
    case K::True: return true;
    case K::False: return false;
    case K::Not: return !satisfies(m, w, z, f.child());
    case K::And: return satisfies(m, w, z, f.left()) && satisfies(m, w, z, f.right());
    case K::Or: return satisfies(m, w, z, f.left()) || satisfies(m, w, z, f.right());
    case K::Implies:
      return !satisfies(m, w, z, f.left()) || satisfies(m, w, z, f.right());
    case K::Dyn:
      // A pending observation is never stacked; under one, [a]g is false.
      if (z.pending()) return false;
      return satisfies(m, w, ObservationTrace::of(f.action()), f.child());
    case K::Know: {
      const AgentId agent = f.agent();
      const Scenario& s = m.scenario();
      const std::vector<World>* worlds = nullptr;
      if (agent == s.rootAgent) {
        worlds = &m.rootWorlds();
      } else if (agent == s.otherAgent) {
        worlds = &m.otherWorlds();
      } else {
        throw ValidationError("unknown agent '" + agent.name + "' in query");
      }
      // The trace stays pending inside the body: nested modalities remain
      // conditioned on the same observation.
      for (const World& w2 : *worlds) {
        if (!compatible(w, w2, z, agent, s)) continue;
        if (!satisfies(m, w2, z, f.child())) return false;
      }
      return true;
    }
    case K::OnlyKnow:
      throw ScopeError("only-knowing operators are not part of the query fragment: " +
                       render(f));
  }
  return false;
}

bool bruteForceEntails(const Scenario& s, const Formula& query) {
  if (query.containsOnlyKnow()) {
    throw ScopeError("only-knowing operators are not part of the query fragment: " +
                     render(query));
  }
  CanonicalModel m(s);
  for (const World& w : m.allWorlds()) {
    if (!evaluate(w, s.realWorld)) continue;
    if (!satisfies(m, w, ObservationTrace::none(), query)) return false;
  }
  return true;
}

StructureEnumeration enumerateDepthOneStructures(const Scenario& s) {
  if (s.atomVocabulary.size() > 2) {
    throw ValidationError("structure enumeration supports at most 2 atoms, got " +
                          std::to_string(s.atomVocabulary.size()));
  }
  CanonicalModel m(s);
  const auto& worlds = m.allWorlds();
  const std::size_t n = worlds.size();

  std::vector<bool> isModel(n);
  for (std::size_t i = 0; i < n; ++i) isModel[i] = evaluate(worlds[i], s.kbRoot);

  StructureEnumeration result;
  result.candidateCount = 1 << n;
  std::size_t hit = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    // Only-knowing truth condition at depth one: a world is in the state
    // exactly when it satisfies the known formula.
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool inState = (mask >> i) & 1;
      ok = (inState == isModel[i]);
    }
    if (ok) {
      ++result.satisfyingCount;
      hit = mask;
    }
  }
  if (result.satisfyingCount == 1) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) {
      match = (((hit >> i) & 1) == static_cast<std::size_t>(isModel[i]));
    }
    result.uniqueIsModelSet = match;
  }
  return result;
}

}  // namespace oke
