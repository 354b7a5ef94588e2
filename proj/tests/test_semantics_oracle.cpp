#include <doctest.h>

#include "fixtures.hpp"
#include "temporalis/semantics.hpp"

using namespace temporalis;

namespace {

GroundAtom ga(const char *pred) { return GroundAtom{pred, {}}; }

Interpretation interp_of(std::initializer_list<std::pair<const char *, Interval>>
                             facts) {
  Interpretation i;
  for (const auto &[pred, rho] : facts)
    i.assert_fact(ga(pred), rho);
  return i;
}

} // namespace

TEST_CASE("ht_holds_at") {
  Program p = fixtures::program("R :- P, not Q .");
  const Rule &rule = p.rules()[0];

  SUBCASE("body fires in both layers, head missing") {
    Interpretation both = interp_of({{"P", Interval::point(0)}});
    HTInterpretation ht{both, both};
    CHECK_FALSE(ht_holds_at(ht, rule, 0));
  }
  SUBCASE("head present") {
    Interpretation both = interp_of(
        {{"P", Interval::point(0)}, {"R", Interval::point(0)}});
    HTInterpretation ht{both, both};
    CHECK(ht_holds_at(ht, rule, 0));
  }
  SUBCASE("vacuous when the positive body fails") {
    HTInterpretation ht{Interpretation{}, Interpretation{}};
    CHECK(ht_holds_at(ht, rule, 0));
    CHECK(ht_holds_at(ht, rule, 42));
  }
  SUBCASE("negation reads the there layer in both clauses") {
    // here: P; there: P, Q. Negation blocks both clauses.
    Interpretation here = interp_of({{"P", Interval::point(0)}});
    Interpretation there = interp_of(
        {{"P", Interval::point(0)}, {"Q", Interval::point(0)}});
    HTInterpretation ht{here, there};
    CHECK(ht_holds_at(ht, rule, 0));
  }
}

TEST_CASE("least_here") {
  SUBCASE("the single-model fixture reproduces its unique model") {
    Program p = fixtures::program(fixtures::kSingleModelProgram);
    Dataset d = fixtures::dataset(fixtures::kSingleModelData);
    Interpretation there = interp_of(
        {{"P", Interval::closed(0, 1)}, {"R", Interval::closed(1, 2)}});
    SearchBox box{Interval::closed(-2, 3), {ga("P"), ga("Q"), ga("R")}};
    Interpretation h = least_here(ground(p, d), d, there, box);
    CHECK(h == there);
  }
  SUBCASE("unsupported facts in there are not derived") {
    Program p = fixtures::program("Q :- P .");
    Dataset d = fixtures::dataset("P@0 .");
    Interpretation there = interp_of({{"P", Interval::point(0)},
                                      {"Q", Interval::point(0)},
                                      {"Q", Interval::point(5)}});
    SearchBox box{Interval::closed(-1, 6), {ga("P"), ga("Q")}};
    Interpretation h = least_here(ground(p, d), d, there, box);
    Interpretation expect = interp_of(
        {{"P", Interval::point(0)}, {"Q", Interval::point(0)}});
    CHECK(h == expect);
    CHECK(h != there);
  }
  SUBCASE("empty everything") {
    SearchBox box{Interval::closed(0, 0), {ga("P")}};
    Interpretation h =
        least_here({}, Dataset{}, Interpretation{}, box);
    CHECK(h == Interpretation{});
  }
  SUBCASE("box heads assert over shifted intervals") {
    Program p = fixtures::program("BOXPLUS[1,2] Q :- P .");
    Dataset d = fixtures::dataset("P@0 .");
    Interpretation there = interp_of(
        {{"P", Interval::point(0)}, {"Q", Interval::closed(1, 2)}});
    SearchBox box{Interval::closed(-1, 4), {ga("P"), ga("Q")}};
    Interpretation h = least_here(ground(p, d), d, there, box);
    CHECK(h == there);
  }
  SUBCASE("rightward recursion saturates into a tail") {
    Program p = fixtures::program("BOXPLUS[1,1] P :- P .");
    Dataset d = fixtures::dataset("P@0 .");
    Interpretation there = interp_of({{"P", Interval::at_least(0)}});
    SearchBox box{Interval::closed(-1, 2), {ga("P")}};
    Interpretation h = least_here(ground(p, d), d, there, box);
    CHECK(h == there);
  }
}

TEST_CASE("oracle on the worked examples") {
  SUBCASE("one model") {
    Program p = fixtures::program(fixtures::kSingleModelProgram);
    Dataset d = fixtures::dataset(fixtures::kSingleModelData);
    SearchBox box{Interval::closed(-2, 3), {ga("P"), ga("Q"), ga("R")}};
    auto models = oracle_stable_models(p, d, box);
    REQUIRE(models.size() == 1);
    Interpretation expect = interp_of(
        {{"P", Interval::closed(0, 1)}, {"R", Interval::closed(1, 2)}});
    CHECK(models[0] == expect);
  }
  SUBCASE("two models") {
    Program p = fixtures::program(fixtures::kTwoModelsProgram);
    Dataset d = fixtures::dataset(fixtures::kTwoModelsData);
    SearchBox box{Interval::closed(-2, 3), {ga("P"), ga("Q"), ga("R")}};
    auto models = oracle_stable_models(p, d, box);
    REQUIRE(models.size() == 2);
    Interpretation first = interp_of({{"P", Interval::point(0)},
                                      {"Q", Interval::point(1)},
                                      {"R", Interval::point(0)}});
    Interpretation second = interp_of({{"P", Interval::point(0)},
                                       {"Q", Interval::point(1)},
                                       {"R", Interval::point(1)}});
    CHECK(models[0] == std::min(first, second));
    CHECK(models[1] == std::max(first, second));
  }
  SUBCASE("odd loop has no stable model") {
    Program p = fixtures::program(fixtures::kSelfBlockerProgram);
    SearchBox box{Interval::closed(0, 0), {ga("P")}};
    CHECK(oracle_stable_models(p, Dataset{}, box).empty());
  }
  SUBCASE("positive recursion has exactly its least model") {
    Program p = fixtures::program("Q :- DIAMONDMINUS[0,2] P .");
    Dataset d = fixtures::dataset("P@0 .");
    SearchBox box{Interval::closed(-1, 3), {ga("P"), ga("Q")}};
    auto models = oracle_stable_models(p, d, box);
    REQUIRE(models.size() == 1);
    Interpretation expect = interp_of(
        {{"P", Interval::point(0)}, {"Q", Interval::closed(0, 2)}});
    CHECK(models[0] == expect);
    CHECK(models[0] == least_model(p, d, box));
  }
}

TEST_CASE("flip-flop: every bipartition is stable") {
  Program p = fixtures::program(fixtures::kFlipFlopProgram);
  SearchBox box{Interval::closed(0, 1), {ga("P"), ga("Q")}};
  auto models = oracle_stable_models(p, Dataset{}, box);
  // window of two points plus two tails: one free P/Q choice per position
  CHECK(models.size() == 16);
  for (const Interpretation &m : models) {
    CHECK(check_stable_witness(p, Dataset{}, m, box));
    for (Time t : {-3, 0, 1, 4}) {
      bool pt = m.holds(ga("P"), t);
      bool qt = m.holds(ga("Q"), t);
      CHECK(pt != qt);
    }
  }
}

TEST_CASE("check_stable_witness") {
  Program p = fixtures::program(fixtures::kSingleModelProgram);
  Dataset d = fixtures::dataset(fixtures::kSingleModelData);
  SearchBox box{Interval::closed(-2, 3), {ga("P"), ga("Q"), ga("R")}};

  Interpretation good = interp_of(
      {{"P", Interval::closed(0, 1)}, {"R", Interval::closed(1, 2)}});
  CHECK(check_stable_witness(p, d, good, box));

  // rule violated at t=1
  Interpretation missing_r = interp_of({{"P", Interval::closed(0, 1)}});
  CHECK_FALSE(check_stable_witness(p, d, missing_r, box));

  // unsupported Q@5 fails minimality
  Interpretation padded = interp_of({{"P", Interval::closed(0, 1)},
                                     {"R", Interval::closed(1, 2)},
                                     {"Q", Interval::point(5)}});
  CHECK_FALSE(check_stable_witness(p, d, padded, box));
}

TEST_CASE("positive corpus: oracle finds exactly the least model") {
  // a small deterministic corpus; the acceptance suite runs the big one
  const char *programs[] = {
      "Q :- P .",
      "Q :- DIAMONDMINUS[1,1] P .\nR :- Q, P .",
      "BOXPLUS[1,1] Q :- P .\nR :- DIAMONDMINUS[0,1] Q .",
  };
  for (const char *text : programs) {
    Program p = fixtures::program(text);
    Dataset d = fixtures::dataset("P@[0,1] .");
    SearchBox box{Interval::closed(-1, 3), {ga("P"), ga("Q"), ga("R")}};
    auto models = oracle_stable_models(p, d, box);
    REQUIRE(models.size() == 1);
    CHECK(models[0] == least_model(p, d, box));
  }
}
