#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oke/scenario.hpp"
#include "oke/semantics.hpp"

namespace oke {

// Hyper-parameters of the statistical decision procedure. epsilon is the
// tolerated invalidity rate, gamma the estimation margin, delta the allowed
// failure probability of the guarantee.
struct PacParams {
  double epsilon = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  // All three must lie strictly inside (0,1), with epsilon - gamma > 0 and
  // epsilon + gamma < 1 so the accept and reject regimes are separated.
  void validate() const;
};

// Small deterministic generator (splitmix64). Seeded explicitly so every
// statistical test is bit-stable; stream() derives an independent child
// generator per draw index without advancing the parent, which is how trial
// batches stay reproducible under any execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t nextU64();
  // Uniform in [0,1) with 53-bit resolution; identical across platforms.
  double nextUnit();
  Rng stream(std::uint64_t index) const;

 private:
  std::uint64_t state_;
};

// A finitely supported distribution over worlds. Weights are nonnegative and
// sum to 1 (within 1e-9); every support world must satisfy
// kb_root ∧ real_world, i.e. sampled worlds never contradict the premise.
struct WorldDistribution {
  std::vector<std::pair<World, double>> support;

  static WorldDistribution uniformOver(std::vector<World> worlds);
  void validate(const Scenario& s) const;
};

// All worlds over the scenario vocabulary satisfying kb_root ∧ real_world,
// in lexicographic enumeration order. Requires |P| <= 12.
std::vector<World> premiseWorlds(const Scenario& s);

// One world sampled proportionally to weight. Deterministic given the
// generator state; consumes exactly one draw.
World drawWorld(const WorldDistribution& d, Rng& rng);

// How a sampled world is turned into a partial reading.
//   PerAtomReveal: each atom is independently revealed with probability q as
//     the literal true at the world; the observation is the conjunction
//     (true when nothing is revealed).
//   ActionMenu: picks uniformly among the menu actions whose root-agent
//     reading is true at the world; the observation is that action.
struct MaskSpec {
  enum class Mode { PerAtomReveal, ActionMenu };

  Mode mode = Mode::PerAtomReveal;
  double q = 1.0;
  std::vector<ActionId> menu;
  std::uint64_t seed = 0;

  static MaskSpec perAtomReveal(double q, std::uint64_t seed = 0);
  static MaskSpec actionMenu(std::vector<ActionId> menu, std::uint64_t seed = 0);
};

// Masks w under the given spec. The revealed formula always evaluates true at
// w. Throws ValidationError when an action menu offers no action consistent
// with w.
Observation applyMask(const World& w, const MaskSpec& spec, const Scenario& s,
                      Rng& rng);

// Whether alpha is witnessed true on the observation: decides
//
//   revealed ∧ premise ⊨ K_root(revealed → alpha)
//
// which reduces to entails(kb_root ∧ revealed, represent(alpha)). Observations
// carrying a declared action name use that action's root reading, so this
// static check agrees with regressing the dynamic query for that action.
// alpha must be free of dynamic and only-knowing operators; the observation
// must be consistent with kb_root.
bool witnessedCheck(const Scenario& s, const Observation& rho, const Formula& alpha);

enum class Decision { Accept, Reject };

// Outcome of the accept/reject loop. b is the failure budget ⌊epsilon·m⌋;
// perObservation holds one entry per check actually performed (a Reject stops
// at the earliest prefix where failed exceeds b).
struct Verdict {
  Decision decision = Decision::Accept;
  int m = 0;
  int b = 0;
  int failed = 0;
  std::vector<bool> perObservation;
};

// Runs the witnessed check over the observations in order, tolerating at most
// b = ⌊epsilon·m⌋ failures; rejects as soon as failed > b, accepts otherwise
// (ties at failed == b accept). observations must be nonempty, epsilon in (0,1).
Verdict decidePAC(const Scenario& s, const Formula& alpha,
                  const std::vector<Observation>& observations, double epsilon);

// Observations needed for a two-sided gamma-accurate decision with confidence
// 1 - delta: ⌈ln(1/delta) / (2·gamma²)⌉.
int sampleSize(double gamma, double delta);

// Monte-Carlo estimate of the witnessed rate of alpha: draws `trials` worlds
// from d, masks each under spec, and returns the fraction of witnessed
// checks that pass. Seeded from spec.seed with one derived stream per trial.
double estimateValidity(const Scenario& s, const Formula& alpha,
                        const WorldDistribution& d, const MaskSpec& spec,
                        int trials);

}  // namespace oke
