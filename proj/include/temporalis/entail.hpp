#ifndef TEMPORALIS_ENTAIL_HPP
#define TEMPORALIS_ENTAIL_HPP

#include "temporalis/stablecheck.hpp"

namespace temporalis {

enum class EntailmentMode { Brave, Cautious };

struct EntailmentQuery {
  GroundAtom fact_atom;
  Interval rho = Interval::point(0);
  EntailmentMode mode = EntailmentMode::Brave;
};

// The reduction instances built from a query: the program extension and the
// extended dataset, plus which stable-model answer means "entailed".
struct EntailmentReduction {
  Program program;   // original rules plus the constraint rules (raw,
                     // normalize before checking)
  Dataset dataset;   // original facts plus the fresh anchor fact
  bool entailed_iff_exists = true;
};

EntailmentReduction build_entailment_reduction(const Program &program,
                                               const Dataset &dataset,
                                               const EntailmentQuery &query);

// Decide the query through the stable checker: the fp path when the reduced
// program is forward propagating, the general path otherwise.
bool entails(const Program &program, const Dataset &dataset,
             const EntailmentQuery &query, StableCheckLimits limits = {});

inline bool brave_entails(const Program &program, const Dataset &dataset,
                          EntailmentQuery query,
                          StableCheckLimits limits = {}) {
  query.mode = EntailmentMode::Brave;
  return entails(program, dataset, query, limits);
}

inline bool cautious_entails(const Program &program, const Dataset &dataset,
                             EntailmentQuery query,
                             StableCheckLimits limits = {}) {
  query.mode = EntailmentMode::Cautious;
  return entails(program, dataset, query, limits);
}

} // namespace temporalis

#endif
