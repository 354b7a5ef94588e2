#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "temporalis/interpretation.hpp"

using namespace temporalis;

namespace {

GroundAtom ga(const char *pred) { return GroundAtom{pred, {}}; }

// Brute-force membership oracle for coalesce: a point is in the result iff
// it is in some input interval.
bool member_of_any(const std::vector<Interval> &v, Time t) {
  for (const Interval &iv : v)
    if (iv.contains(t))
      return true;
  return false;
}

} // namespace

TEST_CASE("coalesce") {
  SUBCASE("overlap merge") {
    IntervalSet s = IntervalSet::coalesce(
        {Interval::closed(0, 1), Interval::closed(1, 3)});
    REQUIRE(s.runs().size() == 1);
    CHECK(s.runs()[0] == Interval::closed(0, 3));
  }
  SUBCASE("disjoint stay apart") {
    IntervalSet s = IntervalSet::coalesce(
        {Interval::closed(0, 1), Interval::closed(3, 4)});
    CHECK(s.runs().size() == 2);
  }
  SUBCASE("integer adjacency merges") {
    std::vector<Interval> in = {Interval::closed(0, 2), Interval::closed(3, 5)};
    IntervalSet s = IntervalSet::coalesce(in);
    REQUIRE(s.runs().size() == 1);
    CHECK(s.runs()[0] == Interval::closed(0, 5));
    for (Time t = -2; t <= 7; ++t)
      CHECK(s.contains(t) == member_of_any(in, t));
  }
  SUBCASE("random inputs: minimal and membership preserving") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
      std::vector<Interval> in;
      int n = static_cast<int>(rng() % 6);
      for (int i = 0; i < n; ++i) {
        Time lo = static_cast<Time>(rng() % 21) - 10;
        Time hi = lo + static_cast<Time>(rng() % 5);
        in.push_back(Interval::closed(lo, hi));
      }
      IntervalSet s = IntervalSet::coalesce(in);
      for (Time t = -12; t <= 17; ++t)
        CHECK(s.contains(t) == member_of_any(in, t));
      // minimal: runs disjoint with gaps
      for (std::size_t i = 1; i < s.runs().size(); ++i)
        CHECK(s.runs()[i].lo() > s.runs()[i - 1].hi() + 1);
      // idempotent
      CHECK(IntervalSet::coalesce(s.runs()) == s);
    }
  }
}

TEST_CASE("eval of ground metric atoms") {
  Interpretation i;
  i.assert_fact(ga("P"), Interval::closed(0, 1));

  SUBCASE("past diamond") {
    AtomPtr a = MetricAtom::diamond_minus(Interval::point(1),
                                          MetricAtom::rel(ga("P")));
    CHECK(eval_metric_atom(i, a, 1));
    CHECK(eval_metric_atom(i, a, 2));
    CHECK_FALSE(eval_metric_atom(i, a, 0));
    CHECK_FALSE(eval_metric_atom(i, a, 3));
  }
  SUBCASE("TOP holds everywhere") {
    for (Time t : {-100, 0, 7})
      CHECK(eval_metric_atom(i, MetricAtom::top(), t));
  }
  SUBCASE("since with a bounded witness range") {
    // P@0 and Q@3: Q SINCE[2,4] P at 3 needs a witness in {-1,0,1} and P
    // everywhere strictly between; Q@1 fails, so the atom is false.
    Interpretation j;
    j.assert_fact(ga("P"), Interval::point(0));
    j.assert_fact(ga("Q"), Interval::point(3));
    AtomPtr a = MetricAtom::since(Interval::closed(2, 4),
                                  MetricAtom::rel(ga("Q")),
                                  MetricAtom::rel(ga("P")));
    CHECK_FALSE(eval_metric_atom(j, a, 3));
    // brute-force cross-check of the same atom over a range of points
    for (Time t = -3; t <= 6; ++t) {
      bool expect = false;
      for (Time w = t - 4; w <= t - 2 && !expect; ++w) {
        if (!eval_metric_atom(j, MetricAtom::rel(ga("P")), w))
          continue;
        bool chain = true;
        for (Time u = w + 1; u < t; ++u)
          chain = chain && eval_metric_atom(j, MetricAtom::rel(ga("Q")), u);
        expect = chain;
      }
      CHECK(eval_metric_atom(j, a, t) == expect);
    }
  }
  SUBCASE("punctual witness distance one carries no lhs obligation") {
    Interpretation j;
    j.assert_fact(ga("P"), Interval::point(0));
    AtomPtr a = MetricAtom::since(Interval::point(1),
                                  MetricAtom::bottom(),
                                  MetricAtom::rel(ga("P")));
    CHECK(eval_metric_atom(j, a, 1));  // (0,1) is empty over the integers
    CHECK_FALSE(eval_metric_atom(j, a, 2));
  }
}

TEST_CASE("box duality against direct enumeration") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 100; ++round) {
    Interpretation i;
    for (Time t = -5; t <= 5; ++t)
      if (rng() & 1)
        i.assert_fact(ga("P"), Interval::point(t));
    Time lo = static_cast<Time>(rng() % 4);
    Time hi = lo + static_cast<Time>(rng() % 4);
    AtomPtr box = MetricAtom::box_minus(Interval::closed(lo, hi),
                                        MetricAtom::rel(ga("P")));
    for (Time t = -8; t <= 8; ++t) {
      bool expect = true;
      for (Time u = t - hi; u <= t - lo; ++u)
        expect = expect && eval_metric_atom(i, MetricAtom::rel(ga("P")), u);
      CHECK(eval_metric_atom(i, box, t) == expect);
    }
  }
}

TEST_CASE("models_fact") {
  Interpretation i;
  i.assert_fact(ga("P"), Interval::closed(0, 1));
  AtomPtr p = MetricAtom::rel(ga("P"));
  CHECK(models_fact(i, p, Interval::closed(0, 1)));
  CHECK_FALSE(models_fact(i, p, Interval::closed(0, 2)));

  SUBCASE("unbounded rho via tail stabilization") {
    Interpretation j;
    j.assert_fact(ga("P"), Interval::at_least(0));
    AtomPtr always_p =
        MetricAtom::box_plus(Interval::at_least(0), MetricAtom::rel(ga("P")));
    CHECK(models_fact(j, always_p, Interval::point(5)));
    CHECK(eval_metric_atom(j, always_p, 5));
    CHECK(eval_metric_atom(j, always_p, 100));
    CHECK_FALSE(eval_metric_atom(j, always_p, -1));
    CHECK(models_fact(j, p, Interval::at_least(0)));
    CHECK_FALSE(models_fact(j, p, Interval::all()));
  }
}

TEST_CASE("dataset entailment") {
  Dataset d = fixtures::dataset("P@[0,1] .");
  AtomPtr dia = MetricAtom::diamond_minus(Interval::point(1),
                                          MetricAtom::rel(ga("P")));
  CHECK(dataset_entails(d, dia, 2));
  CHECK_FALSE(dataset_entails(d, MetricAtom::rel(ga("Q")), 0));
  CHECK(dataset_entails(fixtures::dataset(""), MetricAtom::top(), 7));
}

namespace {

// Random atom over predicates P, Q with depth budget d.
AtomPtr random_atom(std::mt19937_64 &rng, int depth) {
  auto rnd_interval = [&]() {
    Time lo = static_cast<Time>(rng() % 3);
    if (rng() % 4 == 0)
      return Interval::at_least(lo);
    return Interval::closed(lo, lo + static_cast<Time>(rng() % 3));
  };
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 4) {
    case 0:
      return MetricAtom::rel(ga("P"));
    case 1:
      return MetricAtom::rel(ga("Q"));
    case 2:
      return MetricAtom::top();
    default:
      return MetricAtom::bottom();
    }
  }
  switch (rng() % 6) {
  case 0:
    return MetricAtom::diamond_minus(rnd_interval(), random_atom(rng, depth - 1));
  case 1:
    return MetricAtom::diamond_plus(rnd_interval(), random_atom(rng, depth - 1));
  case 2:
    return MetricAtom::box_minus(rnd_interval(), random_atom(rng, depth - 1));
  case 3:
    return MetricAtom::box_plus(rnd_interval(), random_atom(rng, depth - 1));
  case 4:
    return MetricAtom::since(rnd_interval(), random_atom(rng, depth - 1),
                             random_atom(rng, depth - 1));
  default:
    return MetricAtom::until(rnd_interval(), random_atom(rng, depth - 1),
                             random_atom(rng, depth - 1));
  }
}

std::pair<Interpretation, Interpretation> random_ht_pair(
    std::mt19937_64 &rng) {
  Interpretation here, there;
  for (const char *pred : {"P", "Q"}) {
    for (Time t = -6; t <= 6; ++t) {
      switch (rng() % 4) {
      case 0:
        here.assert_fact(ga(pred), Interval::point(t));
        [[fallthrough]];
      case 1:
        there.assert_fact(ga(pred), Interval::point(t));
        break;
      default:
        break;
      }
    }
    if (rng() % 4 == 0) {
      there.assert_fact(ga(pred), Interval::at_most(-7));
      if (rng() % 2)
        here.assert_fact(ga(pred), Interval::at_most(-7));
    }
    if (rng() % 4 == 0) {
      there.assert_fact(ga(pred), Interval::at_least(7));
      if (rng() % 2)
        here.assert_fact(ga(pred), Interval::at_least(7));
    }
  }
  return {here, there};
}

} // namespace

TEST_CASE("persistence: satisfaction is monotone across contained "
          "interpretations") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int round = 0; round < 1000; ++round) {
    auto [here, there] = random_ht_pair(rng);
    REQUIRE(here.contained_in(there));
    AtomPtr atom = random_atom(rng, 3);
    Time t = static_cast<Time>(rng() % 13) - 6;
    if (eval_metric_atom(here, atom, t)) {
      CHECK(eval_metric_atom(there, atom, t));
      ++checked;
    }
  }
  CHECK(checked > 100);  // the sample actually exercised the implication
}
