#include <doctest.h>

#include "fixtures.hpp"
#include "temporalis/normalize.hpp"
#include "temporalis/semantics.hpp"

using namespace temporalis;

namespace {

GroundAtom ga(const char *pred) { return GroundAtom{pred, {}}; }

bool same_existence(const char *program_text, const char *data_text) {
  Program p = fixtures::program(program_text);
  Dataset d = fixtures::dataset(data_text);
  Program q = normalize(p).output;
  Time tp = std::max(p.t_pi(), q.t_pi());
  auto [dlo, dhi] = data_extent(d);
  Interval window = Interval::closed(dlo - tp - 1, dhi + tp + 1);
  SearchBox before_box = default_search_box(p, d);
  before_box.window = window;
  SearchBox after_box = default_search_box(q, d);
  after_box.window = window;
  bool before = !oracle_stable_models(p, d, before_box).empty();
  bool after = !oracle_stable_models(q, d, after_box).empty();
  return before == after;
}

} // namespace

TEST_CASE("diamond elimination") {
  Program p = fixtures::program(fixtures::kSingleModelProgram);
  NormalizationReport rep = normalize(p);
  REQUIRE(rep.output.rules().size() == 1);
  CHECK(rep.output.rules()[0].to_string() ==
        "R :- (TOP) SINCE[1,1] (P), not Q .");
  CHECK(rep.fresh_predicates.empty());
  CHECK(is_normal_form(rep.output));
}

TEST_CASE("already-normal programs come back unchanged") {
  Program p = fixtures::program("R :- (TOP) SINCE[1,1] (P), not Q .");
  NormalizationReport rep = normalize(p);
  CHECK(rep.output.to_string() == p.to_string());
  CHECK(rep.fresh_predicates.empty());
}

TEST_CASE("head boxes move into body diamonds") {
  Program p = fixtures::program("BOXPLUS[1,1] S :- S, not DIAMONDPLUS[1,1] S .");
  NormalizationReport rep = normalize(p);
  CHECK(is_normal_form(rep.output));
  REQUIRE(rep.fresh_predicates.size() >= 1);
  // the rewiring: S' <- body ; S <- diamond-chain S'
  bool found_definition = false;
  for (const Rule &r : rep.output.rules())
    if (r.head->to_string() == "S" && r.positive.size() == 1)
      found_definition = true;
  CHECK(found_definition);
}

TEST_CASE("nesting elimination keeps operands flat") {
  Program p = fixtures::program("R :- BOXMINUS[1,2] DIAMONDMINUS[0,1] P .");
  NormalizationReport rep = normalize(p);
  CHECK(is_normal_form(rep.output));
}

TEST_CASE("unbounded intervals other than [0,inf) are eliminated") {
  SUBCASE("boxes") {
    Program p = fixtures::program("R :- BOXMINUS[2,inf) P .");
    NormalizationReport rep = normalize(p);
    CHECK(is_normal_form(rep.output));
    bool has_zero_inf_definition = false;
    for (const Rule &r : rep.output.rules())
      for (const auto &a : r.positive)
        if (a->kind() == AtomKind::BoxMinus && a->rho().hi_infinite() &&
            a->rho().lo() == 0)
          has_zero_inf_definition = true;
    CHECK(has_zero_inf_definition);
  }
  SUBCASE("since") {
    Program p = fixtures::program("R :- (P) SINCE[2,inf) (Q) .");
    NormalizationReport rep = normalize(p);
    CHECK(is_normal_form(rep.output));
  }
  SUBCASE("negated since splits into negated disjunct definitions") {
    Program p = fixtures::program("R :- S, not (P) SINCE[2,inf) (Q) .");
    NormalizationReport rep = normalize(p);
    CHECK(is_normal_form(rep.output));
  }
}

TEST_CASE("normal form is a fixpoint") {
  const char *texts[] = {
      fixtures::kSingleModelProgram,
      "BOXPLUS[1,1] S :- S, not DIAMONDPLUS[1,1] S .",
      "R :- BOXMINUS[1,2] DIAMONDMINUS[0,1] P .",
      "R :- (P) SINCE[2,inf) (Q) .",
  };
  for (const char *text : texts) {
    Program once = normalize(fixtures::program(text)).output;
    Program twice = normalize(once).output;
    CHECK(once.to_string() == twice.to_string());
  }
}

TEST_CASE("output size stays linear in operator occurrences") {
  Program p = fixtures::program(
      "R :- DIAMONDMINUS[0,1] P, BOXMINUS[1,3] Q, (P) SINCE[1,4] (Q), "
      "not DIAMONDPLUS[2,2] P .\n"
      "BOXPLUS[2,2] S :- DIAMONDMINUS[1,inf) Q .");
  NormalizationReport rep = normalize(p);
  CHECK(is_normal_form(rep.output));
  CHECK(rep.output.rules().size() <= 8 * 2);  // c * operator occurrences
}

TEST_CASE("stable-model existence is preserved") {
  CHECK(same_existence(fixtures::kSingleModelProgram,
                       fixtures::kSingleModelData));
  CHECK(same_existence(fixtures::kTwoModelsProgram, fixtures::kTwoModelsData));
  CHECK(same_existence(fixtures::kSelfBlockerProgram, ""));
  CHECK(same_existence("R :- BOXMINUS[1,1] DIAMONDMINUS[0,1] P .", "P@0 ."));
  CHECK(same_existence("BOXPLUS[1,1] S :- S, not DIAMONDPLUS[1,1] S .",
                       "S@0 ."));
}

TEST_CASE("forward-propagating programs stay forward-propagating") {
  const char *fp_texts[] = {
      fixtures::kSingleModelProgram,
      fixtures::kFlipFlopProgram,
      "BOXPLUS[2,2] S :- DIAMONDMINUS[1,inf) Q .",
      "R :- BOXMINUS[1,1] DIAMONDMINUS[0,1] P, not Q .",
      "R :- (P) SINCE[2,inf) (Q) .",
  };
  for (const char *text : fp_texts) {
    Program p = fixtures::program(text);
    REQUIRE(is_forward_propagating(p));
    CHECK(is_forward_propagating(normalize(p).output));
  }
}
