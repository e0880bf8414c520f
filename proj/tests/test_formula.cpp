#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oke/formula.hpp"
#include "oke/pac.hpp"
#include "testutil.hpp"

using oke::ActionId;
using oke::AgentId;
using oke::Formula;
using oke::ParseError;
using oke::ParseOptions;
using oke::ValidationError;

namespace {

const AgentId kA{"A"};
const AgentId kB{"B"};

ParseOptions withActions(const std::set<std::string>* actions) {
  ParseOptions o;
  o.actions = actions;
  return o;
}

// Full-language generator for round-trip tests: Know/OnlyKnow anywhere, a
// dynamic operator allowed once per branch.
Formula randomFull(oke::Rng& rng, const std::vector<std::string>& atoms,
                   int maxDepth, bool dynAllowed) {
  double u = rng.nextUnit();
  if (maxDepth == 0 || u < 0.30) return testutil::randomObjective(rng, atoms, 1);
  if (u < 0.42) {
    AgentId agent{rng.nextUnit() < 0.5 ? "A" : "B"};
    Formula body = randomFull(rng, atoms, maxDepth - 1, dynAllowed);
    return rng.nextUnit() < 0.8 ? Formula::know(agent, body)
                                : Formula::onlyKnow(agent, body);
  }
  if (dynAllowed && u < 0.50) {
    ActionId action{rng.nextUnit() < 0.5 ? "rho" : "sigma"};
    return Formula::after(action,
                          testutil::randomKnowQuery(rng, atoms, maxDepth - 1, 2));
  }
  double op = rng.nextUnit();
  if (op < 0.25) return Formula::negate(randomFull(rng, atoms, maxDepth - 1, dynAllowed));
  Formula l = randomFull(rng, atoms, maxDepth - 1, dynAllowed);
  Formula r = randomFull(rng, atoms, maxDepth - 1, dynAllowed);
  if (op < 0.50) return Formula::conj(l, r);
  if (op < 0.75) return Formula::disj(l, r);
  return Formula::implies(l, r);
}

}  // namespace

TEST_CASE("parsing builds the expected trees") {
  Formula f = oke::parse("K_A (p -> q)");
  REQUIRE(f.kind() == Formula::Kind::Know);
  CHECK(f.agent() == kA);
  CHECK(f.child() == Formula::implies(Formula::atom("p"), Formula::atom("q")));

  Formula g = oke::parse("[rho] !K_B p");
  REQUIRE(g.kind() == Formula::Kind::Dyn);
  CHECK(g.action() == ActionId{"rho"});
  CHECK(g.child() ==
        Formula::negate(Formula::know(kB, Formula::atom("p"))));

  CHECK(oke::parse("p & q | r") ==
        Formula::disj(Formula::conj(Formula::atom("p"), Formula::atom("q")),
                      Formula::atom("r")));
}

TEST_CASE("precedence and associativity") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(oke::parse("p | q & r") == Formula::disj(p, Formula::conj(q, r)));
  CHECK(oke::parse("p -> q -> r") ==
        Formula::implies(p, Formula::implies(q, r)));  // right-associative
  CHECK(oke::parse("p -> q | r") == Formula::implies(p, Formula::disj(q, r)));
  CHECK(oke::parse("!p & q") == Formula::conj(Formula::negate(p), q));
  CHECK(oke::parse("K_A p & q") == Formula::conj(Formula::know(kA, p), q));
  CHECK(oke::parse("[rho] K_A p & q") ==
        Formula::conj(Formula::after(ActionId{"rho"}, Formula::know(kA, p)), q));
  CHECK(oke::parse("true & false") == Formula::conj(Formula::truth(), Formula::falsity()));
}

TEST_CASE("the biconditional is sugar for two implications") {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  CHECK(oke::parse("p <-> q") ==
        Formula::conj(Formula::implies(p, q), Formula::implies(q, p)));
}

TEST_CASE("rendering uses minimal parentheses") {
  CHECK(oke::render(Formula::know(kA, Formula::atom("p"))) == "K_A p");
  CHECK(oke::render(Formula::negate(
            Formula::disj(Formula::atom("p"), Formula::atom("q")))) == "!(p | q)");
  CHECK(oke::render(Formula::after(ActionId{"rho"},
                                   Formula::know(kA, Formula::atom("p")))) ==
        "[rho] K_A p");
  CHECK(oke::render(oke::parse("p & q | r")) == "p & q | r");
  CHECK(oke::render(oke::parse("p & (q | r)")) == "p & (q | r)");
  CHECK(oke::render(oke::parse("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(oke::render(oke::parse("p -> q -> r")) == "p -> q -> r");
}

TEST_CASE("round-trip: parse(render(f)) is structurally identical") {
  oke::Rng rng(20240811);
  std::vector<std::string> atoms = {"p", "q", "r"};
  std::set<std::string> actions = {"rho", "sigma"};
  ParseOptions options = withActions(&actions);
  for (int i = 0; i < 300; ++i) {
    Formula f = randomFull(rng, atoms, 4, true);
    Formula back = oke::parse(oke::render(f), options);
    REQUIRE(back == f);
  }
}

TEST_CASE("agent depth follows the structural rules") {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  CHECK(p.depth(kA) == 1);
  CHECK(Formula::truth().depth(kA) == 1);
  CHECK(Formula::know(kB, p).depth(kA) == 2);
  CHECK(Formula::know(kA, p).depth(kA) == 1);  // own modality is transparent
  CHECK(Formula::after(ActionId{"rho"}, Formula::know(kA, p)).depth(kA) == 1);
  CHECK(Formula::know(kB, Formula::know(kA, p)).depth(kA) == 3);
  CHECK(Formula::conj(Formula::know(kB, p), q).depth(kA) == 2);  // max rule

  oke::Rng rng(7);
  std::vector<std::string> atoms = {"p", "q"};
  for (int i = 0; i < 100; ++i) {
    Formula f = testutil::randomKnowQuery(rng, atoms, 3, 2);
    for (const AgentId& i1 : {kA, kB}) {
      CHECK(Formula::negate(f).depth(i1) == f.depth(i1));
      CHECK(Formula::after(ActionId{"rho"}, f).depth(i1) == f.depth(i1));
      CHECK(Formula::know(i1, f).depth(i1) == f.depth(i1));
    }
    CHECK(Formula::know(kB, f).depth(kA) == f.depth(kB) + 1);
    CHECK(Formula::know(kA, f).depth(kB) == f.depth(kA) + 1);
  }
}

TEST_CASE("objectivity and atom collection") {
  CHECK(oke::parse("p & !q").isObjective());
  CHECK_FALSE(oke::parse("K_A p").isObjective());
  CHECK_FALSE(oke::parse("[rho] p").isObjective());
  CHECK_FALSE(oke::parse("O_B p").isObjective());

  CHECK(oke::parse("K_A (p -> q)").atoms() == std::set<std::string>{"p", "q"});
  CHECK(oke::parse("true").atoms().empty());
  CHECK(oke::parse("p & p").atoms() == std::set<std::string>{"p"});
}

TEST_CASE("literal shapes") {
  CHECK(oke::parse("p").isLiteral());
  CHECK(oke::parse("!p").isLiteral());
  CHECK_FALSE(oke::parse("!!p").isLiteral());
  CHECK(oke::parse("p & !q & r").isConjunctionOfLiterals());
  CHECK(oke::parse("true").isConjunctionOfLiterals());
  CHECK_FALSE(oke::parse("p | q").isConjunctionOfLiterals());
  CHECK_FALSE(oke::parse("p & (q | r)").isConjunctionOfLiterals());
}

TEST_CASE("parse errors carry positions and name the offence") {
  CHECK_THROWS_AS((void)oke::parse("p &"), ParseError);
  CHECK_THROWS_AS((void)oke::parse("(p"), ParseError);
  CHECK_THROWS_AS((void)oke::parse(""), ParseError);
  CHECK_THROWS_AS((void)oke::parse("K_C p"), ParseError);
  CHECK_THROWS_WITH_AS((void)oke::parse("K_C p"),
                       doctest::Contains("unknown agent"), ParseError);

  try {
    (void)oke::parse("p &\n  | q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("a second observation inside a pending one is rejected") {
  CHECK_THROWS_AS((void)oke::parse("[a] [b] p"), ParseError);
  CHECK_THROWS_AS((void)oke::parse("[a] ([b] p)"), ParseError);
  CHECK(oke::parse("[a] p & [b] q").containsDyn());  // siblings are fine

  Formula inner = Formula::after(ActionId{"b"}, Formula::atom("p"));
  CHECK_THROWS_AS((void)Formula::after(ActionId{"a"}, inner), ValidationError);
  CHECK_THROWS_AS(
      (void)Formula::after(ActionId{"a"}, Formula::negate(inner)), ValidationError);
}

TEST_CASE("declared vocabularies and action sets are enforced") {
  std::set<std::string> vocab = {"p"};
  ParseOptions o;
  o.vocabulary = &vocab;
  CHECK_THROWS_AS((void)oke::parse("q", o), ParseError);
  CHECK(oke::parse("p", o) == Formula::atom("p"));

  std::set<std::string> actions = {"rho"};
  ParseOptions oa = withActions(&actions);
  CHECK_THROWS_AS((void)oke::parse("[tau] p", oa), ParseError);
  CHECK(oke::parse("[rho] p", oa).action() == ActionId{"rho"});
}

TEST_CASE("comments and whitespace are ignored") {
  CHECK(oke::parse("p # trailing words & q") == Formula::atom("p"));
  CHECK(oke::parse("p &  # comment\n q") ==
        Formula::conj(Formula::atom("p"), Formula::atom("q")));
}
