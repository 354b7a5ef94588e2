#ifndef TEMPORALIS_SEMANTICS_HPP
#define TEMPORALIS_SEMANTICS_HPP

#include <vector>

#include "temporalis/interpretation.hpp"

namespace temporalis {

// A pair of interpretations with here contained in there.
struct HTInterpretation {
  Interpretation here;
  Interpretation there;
};

// Oracle search space: per-atom truth pattern inside a bounded window plus
// one constant truth value per tail.
struct SearchBox {
  Interval window = Interval::point(0);  // bounded
  std::vector<GroundAtom> atoms;
};

// Window sized to the dataset extent plus a t_pi+1 margin; atoms are the
// relational atoms of the universe.
SearchBox default_search_box(const Program &program, const Dataset &dataset);

struct OracleLimits {
  unsigned long long max_candidates = 1ull << 24;
  int threads = 0;  // 0: TEMPORALIS_THREADS or 1
};

// Both conditions of the HT-model definition at one time point: a rule
// triggered in a layer must have its head satisfied in that layer, with
// negated atoms always read in there.
bool ht_holds_at(const HTInterpretation &ht, const Rule &rule, Time t);

// An HT pair satisfies the ground rules at every integer time point.
// Decided on a finite representative range: values of tail-constant
// interpretations are constant beyond their support hull widened by the
// rules' atom reach.
bool ht_model_of_rules(const HTInterpretation &ht,
                       const std::vector<Rule> &ground_rules, Time t_pi);

// The least interpretation closed under the rules relative to `there`:
// start from the least model of the dataset and saturate rule heads whose
// positive bodies hold here and whose negated atoms fail in there.
// Precondition: (there, there) is an HT-model of the rules; a triggered
// BOTTOM head reports that the precondition was violated.
Interpretation least_here(const std::vector<Rule> &ground_rules,
                          const Dataset &dataset, const Interpretation &there,
                          const SearchBox &box);

// The least model of a positive program (negated atoms absent). Use for the
// positive-program equivalence checks.
Interpretation least_model(const Program &program, const Dataset &dataset,
                           const SearchBox &box);

// True iff (candidate, candidate) is an HT-model of the program and dataset
// and least_here reproduces the candidate exactly.
bool check_stable_witness(const Program &program, const Dataset &dataset,
                          const Interpretation &candidate,
                          const SearchBox &box);

// Exhaustive enumeration of tail-constant stable models over the box, in
// canonical order. Desk-scale only; guarded.
std::vector<Interpretation> oracle_stable_models(const Program &program,
                                                 const Dataset &dataset,
                                                 const SearchBox &box,
                                                 const OracleLimits &limits = {});

} // namespace temporalis

#endif
