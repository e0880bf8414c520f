#include <string>
#include <vector>

#include "doctest.h"
#include "oke/propcore.hpp"
#include "oke/reduction.hpp"
#include "oke/regression.hpp"
#include "oke/scenario.hpp"
#include "oke/semantics.hpp"
#include "testutil.hpp"

using oke::Formula;
using oke::ReductionMode;

TEST_CASE("implication form spells out the nested knowledge bases") {
  oke::Scenario s = oke::loadScenario(
      "[atoms]\np q\n[kb_root]\np | q\n[kb_nested]\nq\n");
  auto o = s.parseOptions();

  oke::ReducedQuery r =
      oke::represent(oke::parse("K_A K_B p", o), s, ReductionMode::ImplicationForm);
  CHECK(r.mode == ReductionMode::ImplicationForm);
  CHECK(r.source == oke::parse("K_A K_B p", o));
  CHECK(r.objectiveResult ==
        Formula::implies(s.kbRoot, Formula::implies(s.kbNested, Formula::atom("p"))));

  // Equivalent to asking whether both knowledge bases jointly force p.
  Formula flat = Formula::implies(Formula::conj(s.kbRoot, s.kbNested),
                                  Formula::atom("p"));
  CHECK(oke::entails(r.objectiveResult, flat));
  CHECK(oke::entails(flat, r.objectiveResult));
}

TEST_CASE("substitution form decides each knowledge subformula") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();

  CHECK(oke::represent(oke::parse("K_B na1", o), s).objectiveResult ==
        Formula::falsity());
  CHECK(oke::represent(oke::parse("K_A (na1 | na2 | na3 | na4)", o), s).objectiveResult ==
        Formula::truth());
  // Objective input passes through structurally unchanged.
  Formula obj = oke::parse("na4 & !nb4", o);
  CHECK(oke::represent(obj, s).objectiveResult == obj);
  // Negated knowledge resolves inside the negation.
  CHECK(oke::represent(oke::parse("!K_A na1", o), s).objectiveResult ==
        Formula::negate(Formula::falsity()));
}

TEST_CASE("static entailment answers on the card game") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();

  CHECK(oke::entailsKnow(s, oke::parse("na1 | na2 | na3 | na4", o)));
  CHECK_FALSE(oke::entailsKnow(s, oke::parse("na4", o)));
  CHECK(oke::entailsKnow(s, oke::parse("!K_B na1", o)));

  CHECK(oke::decideQuery(s, oke::parse("!K_A na1 & !K_A na2 & !K_A na3 & !K_A na4", o)));
  CHECK(oke::decideQuery(s, oke::parse("K_A (na1 | na2 | na3 | na4)", o)));
  CHECK_FALSE(oke::decideQuery(s, oke::parse("K_A na4", o)));
  CHECK(oke::decideQuery(s, oke::parse("na4 & nb3", o)));
  CHECK_FALSE(oke::decideQuery(s, oke::parse("wb", o)));
}

TEST_CASE("dynamic entailment answers on the card game") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();
  auto after = [&](const char* action, const char* alpha) {
    return oke::checkDynamicEntailment(s, oke::ActionId{action}, oke::parse(alpha, o));
  };

  CHECK(after("rho_a4", "na4"));
  CHECK(after("rho_a4", "!nb4"));
  CHECK(after("rho_a4", "!K_B na1"));
  CHECK(after("rho_a4", "wa & !K_B wa"));
  CHECK(after("rho_a4_b3", "K_B !nb4"));
  CHECK(after("rho_a4", "K_B (K_A na1 | K_A !na1)"));
  CHECK(after("rho_a4", "K_B K_A na4"));  // the observation persists inside
  CHECK_FALSE(after("rho_a4", "wb"));
  CHECK_FALSE(after("rho_a4", "K_B na4"));
  CHECK_FALSE(after("rho_a3", "na3"));  // the real deal contradicts rho_a3
}

TEST_CASE("regressed pipeline agrees with the oracle on the demo queries") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();
  const char* queries[] = {
      "!K_A na1 & !K_A na2 & !K_A na3 & !K_A na4",
      "[rho_a4] K_A na4",
      "[rho_a4] K_A !nb4",
      "[rho_a4] K_A !K_B na1",
      "[rho_a4] K_A K_B (K_A na1 | K_A !na1)",
      "[rho_a4] (K_A wa & K_A !K_B wa)",
      "[rho_a4_b3] K_A K_B !nb4",
      "[rho_a4] K_A K_B K_A na4",
      "K_A na4",
      "[rho_a4] K_A wb",
      "[rho_a4] K_A K_B na4",
  };
  for (const char* text : queries) {
    CAPTURE(text);
    Formula f = oke::parse(text, o);
    bool pipeline = oke::decideQuery(s, oke::regress(f, s));
    CHECK(pipeline == oke::bruteForceEntails(s, f));
  }
}

TEST_CASE("scope and agent errors") {
  const oke::Scenario& s = oke::cardGameScenario();
  auto o = s.parseOptions();
  CHECK_THROWS_AS((void)oke::represent(oke::parse("[rho_a4] na4", o), s),
                  oke::ScopeError);
  CHECK_THROWS_AS((void)oke::represent(oke::parse("O_A na4", o), s), oke::ScopeError);
  CHECK_THROWS_AS((void)oke::decideQuery(s, oke::parse("[rho_a4] K_A na4", o)),
                  oke::ScopeError);
  CHECK_THROWS_AS(
      (void)oke::represent(Formula::know(oke::AgentId{"C"}, Formula::atom("na1")), s),
      oke::ValidationError);
}

TEST_CASE("reduction always produces objective formulas") {
  oke::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    oke::Scenario s = testutil::randomTinyScenario(rng, false);
    std::vector<std::string> atoms(s.atomVocabulary.begin(), s.atomVocabulary.end());
    Formula q = testutil::randomKnowQuery(rng, atoms, 3, 3);
    for (ReductionMode mode :
         {ReductionMode::ResSubstitution, ReductionMode::ImplicationForm}) {
      oke::ReducedQuery r = oke::represent(q, s, mode);
      CHECK(r.objectiveResult.isObjective());
      CHECK(r.source == q);
    }
  }
}

TEST_CASE("substitution form matches the oracle on static queries") {
  oke::Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    oke::Scenario s = testutil::randomTinyScenario(rng, false);
    std::vector<std::string> atoms(s.atomVocabulary.begin(), s.atomVocabulary.end());
    Formula q = testutil::randomKnowQuery(rng, atoms, 2, 3);
    CHECK(oke::decideQuery(s, q) == oke::bruteForceEntails(s, q));
    Formula alpha = testutil::randomKnowQuery(rng, atoms, 2, 2);
    CHECK(oke::entailsKnow(s, alpha) ==
          oke::bruteForceEntails(s, Formula::know(s.rootAgent, alpha)));
  }
}

TEST_CASE("dynamic check matches the oracle when the observation happened") {
  oke::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    oke::Scenario s = testutil::randomTinyScenario(rng, /*gammaEntailsReading=*/true);
    std::vector<std::string> atoms(s.atomVocabulary.begin(), s.atomVocabulary.end());
    Formula alpha = testutil::randomKnowQuery(rng, atoms, 2, 2);
    Formula direct = Formula::after(oke::ActionId{"act"},
                                    Formula::know(s.rootAgent, alpha));
    CHECK(oke::checkDynamicEntailment(s, oke::ActionId{"act"}, alpha) ==
          oke::bruteForceEntails(s, direct));
  }
}

TEST_CASE("the modes agree on conjunctively combined knowledge") {
  // Agreement needs the premise of the entailment to be the root knowledge
  // base itself and knowledge operators to occur positively under
  // conjunctions only; both restrictions are sharp (see the divergence case
  // below).
  oke::Rng rng(34);
  for (int i = 0; i < 300; ++i) {
    oke::Scenario s = testutil::randomTinyScenario(rng, false, /*sharedKb=*/true);
    std::vector<std::string> atoms(s.atomVocabulary.begin(), s.atomVocabulary.end());
    Formula q = testutil::randomConjKnowQuery(rng, atoms, 2, 3);
    std::string rendered = oke::render(q);
    CAPTURE(rendered);
    CHECK(oke::entailsKnow(s, q, ReductionMode::ResSubstitution) ==
          oke::entailsKnow(s, q, ReductionMode::ImplicationForm));
  }
}

TEST_CASE("the modes diverge outside that fragment") {
  oke::Scenario s = oke::loadScenario(
      "[atoms]\np q\n[kb_root]\np | q\n[kb_nested]\np | q\n");
  auto o = s.parseOptions();

  // Disjunction over knowledge: the substitution form decides each disjunct
  // alone (neither is known), while the implication form distributes the
  // knowledge base over the disjunction, which p | q does entail.
  Formula q = oke::parse("K_A p | K_A q", o);
  CHECK_FALSE(oke::entailsKnow(s, q, ReductionMode::ResSubstitution));
  CHECK(oke::entailsKnow(s, q, ReductionMode::ImplicationForm));

  // Negation over knowledge: non-beliefs are unprovable in implication form.
  Formula nb = oke::parse("!K_B p", o);
  CHECK(oke::entailsKnow(s, nb, ReductionMode::ResSubstitution));
  CHECK_FALSE(oke::entailsKnow(s, nb, ReductionMode::ImplicationForm));
}
