#include <string>
#include <vector>

#include "doctest.h"
#include "oke/propcore.hpp"
#include "oke/regression.hpp"
#include "oke/scenario.hpp"
#include "oke/semantics.hpp"
#include "testutil.hpp"

using oke::Formula;

namespace {

// The unique world satisfying kb_root & real_world of the card game:
// na4, nb3, wa true and everything else false.
oke::World dealWorld(const oke::CanonicalModel& m) {
  const oke::Scenario& s = m.scenario();
  for (const oke::World& w : m.allWorlds()) {
    if (oke::evaluate(w, Formula::conj(s.kbRoot, s.realWorld))) return w;
  }
  throw std::runtime_error("no premise world");
}

}  // namespace

TEST_CASE("objective evaluation") {
  oke::World w{{{"p", true}, {"q", false}}};
  CHECK(oke::evaluate(w, oke::parse("p & !q")));
  CHECK(oke::evaluate(w, oke::parse("q -> p")));
  CHECK_FALSE(oke::evaluate(w, oke::parse("p -> q")));
  CHECK(oke::evaluate(w, oke::parse("true")));
  CHECK_FALSE(oke::evaluate(w, oke::parse("false")));
  CHECK(w.value("p"));
  CHECK_THROWS_AS((void)w.value("r"), oke::ValidationError);
  CHECK_THROWS_AS((void)oke::evaluate(w, oke::parse("K_A p")), oke::ScopeError);
}

TEST_CASE("canonical model sizes") {
  const oke::Scenario& s = oke::cardGameScenario();
  oke::CanonicalModel m(s);
  CHECK(m.allWorlds().size() == 1024);  // 2^10
  CHECK(m.rootWorlds().size() == 12);   // the distinct-card deals
  CHECK(m.otherWorlds().size() == 12);

  oke::Scenario wide = oke::loadScenario(
      "[atoms]\na b c d e f g h i j k l m\n[kb_root]\ntrue\n");
  CHECK_THROWS_AS(oke::CanonicalModel{wide}, oke::ValidationError);
}

TEST_CASE("compatibility relation") {
  const oke::Scenario& s = oke::cardGameScenario();
  oke::CanonicalModel m(s);
  oke::World wStar = dealWorld(m);
  oke::World other = wStar;
  other.assignment["na4"] = false;
  other.assignment["na1"] = true;

  CHECK(oke::compatible(wStar, other, oke::ObservationTrace::none(),
                        s.rootAgent, s));
  oke::ObservationTrace z = oke::ObservationTrace::of(oke::ActionId{"rho_a4"});
  // The root agent's reading na4 must hold in both worlds.
  CHECK(oke::compatible(wStar, wStar, z, s.rootAgent, s));
  CHECK_FALSE(oke::compatible(wStar, other, z, s.rootAgent, s));
  CHECK_FALSE(oke::compatible(other, wStar, z, s.rootAgent, s));
  // The other agent reads true under rho_a4 and rules nothing out.
  CHECK(oke::compatible(wStar, other, z, s.otherAgent, s));
}

TEST_CASE("satisfaction at the deal world") {
  const oke::Scenario& s = oke::cardGameScenario();
  oke::CanonicalModel m(s);
  oke::World wStar = dealWorld(m);
  auto o = s.parseOptions();
  auto sat = [&](const char* text) {
    return oke::satisfies(m, wStar, oke::ObservationTrace::none(),
                          oke::parse(text, o));
  };

  CHECK(sat("K_A (na1 | na2 | na3 | na4)"));
  CHECK_FALSE(sat("K_A na4"));  // before looking, the deal is open
  CHECK(sat("!K_A na4 & !K_A na1"));
  CHECK(sat("[rho_a4] K_A na4"));
  CHECK(sat("[rho_a4] K_A !nb4"));
  CHECK(sat("[rho_a4] K_A !K_B na1"));
  CHECK_FALSE(sat("[rho_a4] K_A K_B na4"));
  // The observation stays in force through nested modalities, so re-entering
  // the root agent's knowledge keeps na4 fixed.
  CHECK(sat("[rho_a4] K_A K_B K_A na4"));
  CHECK(sat("[rho_a4] K_A K_B (K_A na1 | K_A !na1)"));
  CHECK(sat("[rho_a4] (K_A wa & K_A !K_B wa)"));
  CHECK(sat("[rho_a4_b3] K_A K_B !nb4"));
  CHECK_FALSE(sat("[rho_a4] K_A wb"));

  CHECK_THROWS_AS((void)sat("O_A na4"), oke::ScopeError);

  // A second observation under a pending one is false by definition.
  oke::ObservationTrace z = oke::ObservationTrace::of(oke::ActionId{"rho_a4"});
  CHECK_FALSE(oke::satisfies(m, wStar, z, oke::parse("[rho_a4] na4", o)));

  // An agent whose reading fails at the evaluation world knows everything
  // there, including the impossible.
  oke::World noRead = wStar;
  noRead.assignment["na4"] = false;
  CHECK(oke::satisfies(m, noRead, z,
                       Formula::know(s.rootAgent, Formula::falsity())));
}

TEST_CASE("exhaustive entailment") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();
  CHECK(oke::bruteForceEntails(s, oke::parse("!K_A na1 & !K_A na2 & !K_A na3 & !K_A na4", o)));
  CHECK(oke::bruteForceEntails(s, oke::parse("[rho_a4] K_A na4", o)));
  CHECK_FALSE(oke::bruteForceEntails(s, oke::parse("K_A na4", o)));
  CHECK_FALSE(oke::bruteForceEntails(s, oke::parse("[rho_a4] K_A K_B na4", o)));
  CHECK(oke::bruteForceEntails(s, oke::parse("na4 & nb3", o)));
  CHECK_THROWS_AS((void)oke::bruteForceEntails(s, oke::parse("O_A na4", o)),
                  oke::ScopeError);
}

TEST_CASE("only-knowing pins down a unique depth-one structure") {
  oke::StructureEnumeration one =
      oke::enumerateDepthOneStructures(oke::loadScenario("[atoms]\np\n[kb_root]\np\n"));
  CHECK(one.candidateCount == 4);  // subsets of the two p-worlds
  CHECK(one.satisfyingCount == 1);
  CHECK(one.uniqueIsModelSet);

  oke::StructureEnumeration trivial =
      oke::enumerateDepthOneStructures(oke::loadScenario("[atoms]\np\n[kb_root]\ntrue\n"));
  CHECK(trivial.candidateCount == 4);
  CHECK(trivial.satisfyingCount == 1);
  CHECK(trivial.uniqueIsModelSet);

  oke::StructureEnumeration disj = oke::enumerateDepthOneStructures(
      oke::loadScenario("[atoms]\np q\n[kb_root]\np | q\n"));
  CHECK(disj.candidateCount == 16);
  CHECK(disj.satisfyingCount == 1);
  CHECK(disj.uniqueIsModelSet);

  CHECK_THROWS_AS((void)oke::enumerateDepthOneStructures(oke::cardGameScenario()),
                  oke::ValidationError);
}

TEST_CASE("entailment is stable under strengthening the real world") {
  oke::Rng rng(2024);
  std::vector<std::string> atoms = {"p", "q", "r"};
  int carried = 0;
  for (int i = 0; i < 120; ++i) {
    oke::Scenario s = testutil::randomTinyScenario(rng, /*gammaEntailsReading=*/false);
    Formula query = testutil::randomKnowQuery(
        rng, {s.atomVocabulary.begin(), s.atomVocabulary.end()}, 2, 2);
    if (!oke::bruteForceEntails(s, query)) continue;

    oke::SatResult w = oke::isSatisfiable(
        Formula::conj(Formula::conj(s.kbRoot, s.kbNested), s.realWorld),
        s.atomVocabulary);
    REQUIRE(w.satisfiable);
    const auto& [atomName, val] = *w.witness->begin();
    Formula lit = Formula::atom(atomName);
    if (!val) lit = Formula::negate(lit);

    oke::Scenario stronger = s;
    stronger.realWorld = Formula::conj(s.realWorld, lit);
    ++carried;
    CHECK(oke::bruteForceEntails(stronger, query));
  }
  CHECK(carried > 20);
}
