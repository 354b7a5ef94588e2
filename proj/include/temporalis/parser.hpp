#ifndef TEMPORALIS_PARSER_HPP
#define TEMPORALIS_PARSER_HPP

#include <string_view>

#include "temporalis/ast.hpp"

namespace temporalis {

// Text formats (.dmtl programs, .dfacts datasets). Statements end with ".",
// "%" starts a line comment. Intervals are written "[a,b]", "(a,b]",
// "[a,inf)", ...; a bare integer after an operator keyword or "@" is the
// punctual shorthand for [t,t]. Fractional numbers are rejected: the
// artifact reasons over the integer timeline only.
Program parse_program(std::string_view text);
Dataset parse_dataset(std::string_view text);

// One metric fact "Atom@Interval" (no trailing dot), as used by --fact.
Fact parse_fact(std::string_view text);

// A ground metric atom with an interval, e.g. "BOXMINUS[0,2] P@[1,3]";
// used by the eval command.
std::pair<AtomPtr, Interval> parse_metric_fact(std::string_view text);

} // namespace temporalis

#endif
