#include "oke/pac.hpp"

#include <cmath>
#include <string>

#include "oke/errors.hpp"
#include "oke/propcore.hpp"
#include "oke/reduction.hpp"

namespace oke {

namespace {

void requireUnitInterval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ValidationError(std::string(name) + " must lie strictly in (0,1), got " +
                          std::to_string(v));
  }
}

}  // namespace

void PacParams::validate() const {
  requireUnitInterval(epsilon, "epsilon");
  requireUnitInterval(gamma, "gamma");
  requireUnitInterval(delta, "delta");
  if (!(epsilon - gamma > 0.0)) {
    throw ValidationError("epsilon - gamma must be positive for the reject guarantee");
  }
  if (!(epsilon + gamma < 1.0)) {
    throw ValidationError("epsilon + gamma must stay below 1 for the accept guarantee");
  }
}

std::uint64_t Rng::nextU64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::nextUnit() {
  return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
}

Rng Rng::stream(std::uint64_t index) const {
  // Hash (state, index) into a fresh seed. A plain offset would make the
  // streams overlapping shifts of one sequence; mixing keeps trial t and
  // trial t+1 statistically unrelated.
  std::uint64_t z = state_ ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
  z = (z ^ (z >> 30)) * 0x94d049bb133111ebULL;
  z = (z ^ (z >> 27)) * 0xff51afd7ed558ccdULL;
  return Rng(z ^ (z >> 31));
}

WorldDistribution WorldDistribution::uniformOver(std::vector<World> worlds) {
  if (worlds.empty()) {
    throw ValidationError("cannot build a distribution over zero worlds");
  }
  WorldDistribution d;
  double weight = 1.0 / static_cast<double>(worlds.size());
  d.support.reserve(worlds.size());
  for (World& w : worlds) d.support.emplace_back(std::move(w), weight);
  return d;
}

void WorldDistribution::validate(const Scenario& s) const {
  if (support.empty()) throw ValidationError("world distribution has empty support");
  Formula premise = Formula::conj(s.kbRoot, s.realWorld);
  double total = 0.0;
  for (const auto& [w, weight] : support) {
    if (weight < 0.0) throw ValidationError("negative weight in world distribution");
    total += weight;
    for (const std::string& atom : s.atomVocabulary) {
      if (!w.assignment.count(atom)) {
        throw ValidationError("support world misses atom '" + atom + "'");
      }
    }
    if (!evaluate(w, premise)) {
      throw ValidationError(
          "support world violates kb_root & real_world; the distribution must "
          "only produce worlds consistent with the premise");
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("world distribution weights sum to " + std::to_string(total) +
                          ", expected 1");
  }
}

std::vector<World> premiseWorlds(const Scenario& s) {
  Formula premise = Formula::conj(s.kbRoot, s.realWorld);
  CanonicalModel m(s);  // named: the loop borrows its world list
  std::vector<World> out;
  for (const World& w : m.allWorlds()) {
    if (evaluate(w, premise)) out.push_back(w);
  }
  return out;
}

World drawWorld(const WorldDistribution& d, Rng& rng) {
  if (d.support.empty()) throw ValidationError("world distribution has empty support");
  double u = rng.nextUnit();
  double acc = 0.0;
  for (const auto& [w, weight] : d.support) {
    acc += weight;
    if (u < acc) return w;
  }
  return d.support.back().first;  // guard against accumulated rounding
}

MaskSpec MaskSpec::perAtomReveal(double q, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("reveal probability must lie in [0,1], got " + std::to_string(q));
  }
  MaskSpec spec;
  spec.mode = Mode::PerAtomReveal;
  spec.q = q;
  spec.seed = seed;
  return spec;
}

MaskSpec MaskSpec::actionMenu(std::vector<ActionId> menu, std::uint64_t seed) {
  if (menu.empty()) throw ValidationError("action menu must list at least one action");
  MaskSpec spec;
  spec.mode = Mode::ActionMenu;
  spec.menu = std::move(menu);
  spec.seed = seed;
  return spec;
}

Observation applyMask(const World& w, const MaskSpec& spec, const Scenario& s,
                      Rng& rng) {
  if (spec.mode == MaskSpec::Mode::PerAtomReveal) {
    Formula revealed = Formula::truth();
    bool any = false;
    // atomVocabulary is an ordered set, so the per-atom draws line up with
    // the sorted atom names on every platform.
    for (const std::string& atom : s.atomVocabulary) {
      double u = rng.nextUnit();
      if (u >= spec.q) continue;
      Formula lit = w.value(atom) ? Formula::atom(atom)
                                  : Formula::negate(Formula::atom(atom));
      revealed = any ? Formula::conj(revealed, lit) : lit;
      any = true;
    }
    return Observation{ActionId{"raw"}, revealed};
  }

  std::vector<const ActionId*> consistent;
  for (const ActionId& a : spec.menu) {
    if (evaluate(w, s.senseOf(a, s.rootAgent))) consistent.push_back(&a);
  }
  if (consistent.empty()) {
    throw ValidationError("no action in the mask menu is consistent with the sampled world");
  }
  std::size_t pick = static_cast<std::size_t>(
      rng.nextUnit() * static_cast<double>(consistent.size()));
  if (pick >= consistent.size()) pick = consistent.size() - 1;
  const ActionId& a = *consistent[pick];
  return Observation{a, s.senseOf(a, s.rootAgent)};
}

bool witnessedCheck(const Scenario& s, const Observation& rho, const Formula& alpha) {
  if (alpha.containsDyn()) {
    throw ScopeError("witnessed check takes dynamic-free queries; regress first: " +
                     render(alpha));
  }
  if (alpha.containsOnlyKnow()) {
    throw ScopeError("witnessed check does not accept only-knowing operators: " +
                     render(alpha));
  }
  Formula premise = Formula::conj(s.kbRoot, rho.revealed);
  if (!isSatisfiable(premise).satisfiable) {
    throw ValidationError("observation inconsistent with kb_root: " +
                          render(rho.revealed));
  }
  Formula reduced = represent(alpha, s, ReductionMode::ResSubstitution).objectiveResult;
  return entails(premise, reduced);
}

Verdict decidePAC(const Scenario& s, const Formula& alpha,
                  const std::vector<Observation>& observations, double epsilon) {
  requireUnitInterval(epsilon, "epsilon");
  if (observations.empty()) {
    throw ValidationError("the decision procedure needs at least one observation");
  }
  Verdict v;
  v.m = static_cast<int>(observations.size());
  v.b = static_cast<int>(std::floor(epsilon * static_cast<double>(v.m) + 1e-9));
  for (const Observation& rho : observations) {
    bool ok = witnessedCheck(s, rho, alpha);
    v.perObservation.push_back(ok);
    if (!ok && ++v.failed > v.b) {
      v.decision = Decision::Reject;
      return v;
    }
  }
  v.decision = Decision::Accept;
  return v;
}

int sampleSize(double gamma, double delta) {
  requireUnitInterval(gamma, "gamma");
  requireUnitInterval(delta, "delta");
  // The tiny nudge keeps exact integer values (e.g. gamma=0.5, delta=1/e)
  // from being pushed up by floating-point residue.
  double m = std::log(1.0 / delta) / (2.0 * gamma * gamma);
  return static_cast<int>(std::ceil(m - 1e-9));
}

double estimateValidity(const Scenario& s, const Formula& alpha,
                        const WorldDistribution& d, const MaskSpec& spec,
                        int trials) {
  if (trials <= 0) throw ValidationError("trials must be positive");
  d.validate(s);
  Rng base(spec.seed);
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = base.stream(static_cast<std::uint64_t>(t));
    World w = drawWorld(d, rng);
    Observation rho = applyMask(w, spec, s, rng);
    if (witnessedCheck(s, rho, alpha)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace oke
