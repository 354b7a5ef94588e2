#ifndef TEMPORALIS_NORMALIZE_HPP
#define TEMPORALIS_NORMALIZE_HPP

#include <map>

#include "temporalis/ast.hpp"

namespace temporalis {

struct FreshPredicateInfo {
  std::vector<std::string> sources;
  std::string step;  // "head-boxes", "nesting", "unbounded"
};

struct NormalizationReport {
  Program output;
  std::map<std::string, FreshPredicateInfo> fresh_predicates;
};

// Rewrites a program into normal form: every head is a relational atom or
// BOTTOM, bodies have no nested operators and no diamonds, and the only
// unbounded operator interval is [0,inf). Preserves stable-model existence
// for every dataset, and keeps forward-propagating programs
// forward-propagating.
NormalizationReport normalize(const Program &program);

// The normal-form predicate the rewriting establishes.
bool is_normal_form(const Program &program);

} // namespace temporalis

#endif
