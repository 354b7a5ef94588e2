#ifndef TEMPORALIS_TESTS_FIXTURES_HPP
#define TEMPORALIS_TESTS_FIXTURES_HPP

#include "temporalis/parser.hpp"

namespace fixtures {

// One rule firing off a delayed trigger unless blocked; exactly one stable
// model: P on [0,1], R on [1,2].
inline constexpr const char *kSingleModelProgram =
    "R :- DIAMONDMINUS[1,1] P, not Q .";
inline constexpr const char *kSingleModelData = "P@[0,1] .";

// Mutual suppression across one time step; exactly two stable models.
inline constexpr const char *kTwoModelsProgram =
    "R :- P, not DIAMONDPLUS[1,1] R .\n"
    "R :- Q, not DIAMONDMINUS[1,1] R .";
inline constexpr const char *kTwoModelsData = "P@0 . Q@1 .";

// The classic even-loop pair; pointwise free choice gives infinitely many
// stable models over the timeline.
inline constexpr const char *kFlipFlopProgram = "Q :- not P .\nP :- not Q .";

// Odd loop; no stable model.
inline constexpr const char *kSelfBlockerProgram = "P :- not P .";

inline temporalis::Program program(std::string_view text) {
  return temporalis::parse_program(text);
}
inline temporalis::Dataset dataset(std::string_view text) {
  return temporalis::parse_dataset(text);
}

} // namespace fixtures

#endif
