#include <doctest.h>

#include "fixtures.hpp"
#include "temporalis/parser.hpp"

using namespace temporalis;

TEST_CASE("interval canonicalization") {
  CHECK(Interval::make(1, false, 4, false) == Interval::closed(2, 3));
  CHECK(Interval::make(0, true, 3, false) == Interval::closed(0, 2));
  CHECK(Interval::make(2, true, kPosInf, false) == Interval::at_least(2));
  CHECK_FALSE(Interval::try_make(3, true, 2, true).has_value());
  // (1,2) holds no integer
  CHECK_FALSE(Interval::try_make(1, false, 2, false).has_value());
  CHECK_THROWS_AS(Interval::make(3, true, 2, true), InputError);
}

TEST_CASE("program parsing and t_pi") {
  Program p = fixtures::program(fixtures::kSingleModelProgram);
  REQUIRE(p.rules().size() == 1);
  CHECK(p.t_pi() == 1);
  const Rule &r = p.rules()[0];
  CHECK(r.head->to_string() == "R");
  REQUIRE(r.positive.size() == 1);
  REQUIRE(r.negative.size() == 1);
  CHECK(r.positive[0]->kind() == AtomKind::DiamondMinus);
  CHECK(r.negative[0]->to_string() == "Q");

  // no positive numbers anywhere: t_pi defaults to 1
  CHECK(fixtures::program("P :- P .").t_pi() == 1);
  CHECK(fixtures::program("P :- BOXMINUS[2,5] P .").t_pi() == 5);
}

TEST_CASE("punctual shorthand") {
  Program p = fixtures::program("R :- DIAMONDMINUS1 P .");
  CHECK(p.rules()[0].positive[0]->rho() == Interval::point(1));
  Dataset d = fixtures::dataset("P@3 .");
  CHECK(d.facts()[0].rho == Interval::point(3));
}

TEST_CASE("safety violations carry the offending variable") {
  CHECK_THROWS_AS(fixtures::program("Q(X) :- P ."), SafetyError);
  try {
    fixtures::program("Q(X) :- P .");
  } catch (const SafetyError &e) {
    CHECK(e.rule_index == 0);
    CHECK(e.variable == "X");
  }
  // a variable only in a SINCE left operand does not make the head safe
  CHECK_THROWS_AS(fixtures::program("Q(X) :- (P(X)) SINCE[1,2] (R) ."),
                  SafetyError);
  // ... but in the right operand it does
  CHECK_NOTHROW(fixtures::program("Q(X) :- (R) SINCE[1,2] (P(X)) ."));
}

TEST_CASE("head grammar") {
  CHECK_NOTHROW(fixtures::program("BOXPLUS[1,1] P :- Q ."));
  CHECK_NOTHROW(fixtures::program("BOTTOM :- Q ."));
  CHECK_THROWS_AS(fixtures::program("DIAMONDMINUS[1,1] P :- Q ."),
                  InputError);
}

TEST_CASE("rational endpoints are rejected with the scope message") {
  try {
    fixtures::program("R :- BOXMINUS[0,0.5] P .");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("rational") != std::string::npos);
  }
}

TEST_CASE("negative or empty operator intervals are rejected") {
  CHECK_THROWS(fixtures::program("R :- DIAMONDMINUS[3,2] P ."));
  CHECK_THROWS(fixtures::program("R :- DIAMONDMINUS(1,2) P ."));
}

TEST_CASE("dataset parsing and extent") {
  Dataset d = fixtures::dataset("P@[0,1] .");
  CHECK(d.facts().size() == 1);
  CHECK(data_extent(d) == std::pair<Time, Time>{0, 1});

  Dataset empty = fixtures::dataset("");
  CHECK(data_extent(empty) == std::pair<Time, Time>{0, 0});

  Dataset open = fixtures::dataset("P@(0,3) .");
  CHECK(open.facts()[0].rho == Interval::closed(1, 2));

  Dataset mixed = fixtures::dataset("P@[-3,-3] . Q@[5,7] .");
  CHECK(data_extent(mixed) == std::pair<Time, Time>{-3, 7});

  CHECK_THROWS(fixtures::dataset("P@[3,2] ."));
  CHECK_THROWS(fixtures::dataset("TOP@[0,1] ."));
}

TEST_CASE("print/parse round trip") {
  const char *texts[] = {
      fixtures::kSingleModelProgram,
      fixtures::kTwoModelsProgram,
      fixtures::kFlipFlopProgram,
      "BOXPLUS[1,1] S(X) :- S(X), not DIAMONDPLUS[1,1] S(X) .",
      "R(X,Y) :- (P(X)) SINCE[0,inf) (Q(Y)), P(X), not BOXMINUS[2,2] Q(Y) .",
      "Q :- (P) UNTIL[1,3] (TOP), BOXPLUS[0,inf) R .",
  };
  for (const char *text : texts) {
    Program p1 = fixtures::program(text);
    Program p2 = fixtures::program(p1.to_string());
    REQUIRE(p1.rules().size() == p2.rules().size());
    CHECK(p1.to_string() == p2.to_string());
  }
  Dataset d1 = fixtures::dataset("P@[0,1] . Q(a,b)@3 . R@[2,inf) .");
  Dataset d2 = fixtures::dataset(d1.to_string());
  CHECK(d1.to_string() == d2.to_string());
}

TEST_CASE("grounding") {
  SUBCASE("propositional programs pass through") {
    Program p = fixtures::program(fixtures::kTwoModelsProgram);
    Dataset d = fixtures::dataset(fixtures::kTwoModelsData);
    std::vector<Rule> g = ground(p, d);
    REQUIRE(g.size() == 2);
    CHECK(g[0].to_string() == p.rules()[0].to_string());
  }
  SUBCASE("direct substitution") {
    Program p = fixtures::program("Q(X) :- P(X) .");
    Dataset d = fixtures::dataset("P(a)@0 . P(b)@1 .");
    std::vector<Rule> g = ground(p, d);
    REQUIRE(g.size() == 2);
    CHECK(g[0].to_string() == "Q(a) :- P(a) .");
    CHECK(g[1].to_string() == "Q(b) :- P(b) .");
  }
  SUBCASE("substitutions range over the joint constant set") {
    Program p = fixtures::program("R(X,Y) :- P(X), Q(Y) .");
    Dataset d = fixtures::dataset("P(a)@0 .");
    std::vector<Rule> g = ground(p, d);
    REQUIRE(g.size() == 1);  // only constant a
    CHECK(g[0].to_string() == "R(a,a) :- P(a), Q(a) .");
  }
  SUBCASE("idempotence") {
    Program p = fixtures::program("Q(X) :- P(X), not R(X) .");
    Dataset d = fixtures::dataset("P(a)@0 . P(b)@1 .");
    std::vector<Rule> g1 = ground(p, d);
    std::vector<Rule> g2 = ground(Program(g1), d);
    REQUIRE(g1.size() == g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i)
      CHECK(g1[i].to_string() == g2[i].to_string());
  }
}

TEST_CASE("atom universe") {
  SUBCASE("normalized single-rule program") {
    Program p = fixtures::program("R :- (TOP) SINCE[1,1] (P), not Q .");
    Dataset d = fixtures::dataset("P@[0,1] .");
    AtomUniverse u = atom_universe(p, d);
    std::vector<std::string> names;
    for (const auto &a : u.atoms())
      names.push_back(a->to_string());
    std::vector<std::string> expected = {
        "P",
        "Q",
        "R",
        "BOXMINUS[0,inf) P",
        "BOXMINUS[0,inf) Q",
        "BOXMINUS[0,inf) R",
        "BOXPLUS[0,inf) P",
        "BOXPLUS[0,inf) Q",
        "BOXPLUS[0,inf) R",
        "(TOP) SINCE[1,1] (P)",
    };
    std::sort(expected.begin(), expected.end());
    std::sort(names.begin(), names.end());
    CHECK(names == expected);
  }
  SUBCASE("dataset atoms only") {
    AtomUniverse u =
        atom_universe(fixtures::program(""), fixtures::dataset("P@0 ."));
    REQUIRE(u.size() == 1);
    CHECK(u.at(0)->to_string() == "P");
  }
  SUBCASE("closure boxes for the grounding's relational atoms") {
    AtomUniverse u =
        atom_universe(fixtures::program("Q :- P ."), fixtures::dataset(""));
    std::vector<std::string> names;
    for (const auto &a : u.atoms())
      names.push_back(a->to_string());
    std::vector<std::string> expected = {
        "P",
        "Q",
        "BOXMINUS[0,inf) P",
        "BOXMINUS[0,inf) Q",
        "BOXPLUS[0,inf) P",
        "BOXPLUS[0,inf) Q",
    };
    std::sort(expected.begin(), expected.end());
    std::sort(names.begin(), names.end());
    CHECK(names == expected);
  }
}

TEST_CASE("forward-propagating classification") {
  CHECK(is_forward_propagating(
      fixtures::program(fixtures::kSingleModelProgram)));
  CHECK_FALSE(is_forward_propagating(
      fixtures::program("R :- P, not DIAMONDPLUS[1,1] R .")));
  CHECK_FALSE(is_forward_propagating(fixtures::program("BOXMINUS[0,1] R :- P .")));
  CHECK(is_forward_propagating(fixtures::program(fixtures::kFlipFlopProgram)));
  // nested future operators in bodies count
  CHECK_FALSE(is_forward_propagating(
      fixtures::program("R :- BOXMINUS[1,1] DIAMONDPLUS[1,1] P .")));
}
