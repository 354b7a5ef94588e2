#ifndef TEMPORALIS_INTERPRETATION_HPP
#define TEMPORALIS_INTERPRETATION_HPP

#include <map>

#include "temporalis/ast.hpp"
#include "temporalis/interval_set.hpp"

namespace temporalis {

// Assigns each ground relational atom the set of time points where it
// holds. Atoms that are absent hold nowhere. Every stored set is non-empty.
class Interpretation {
public:
  Interpretation() = default;

  bool holds(const GroundAtom &atom, Time t) const;
  const IntervalSet *find(const GroundAtom &atom) const;

  void assert_fact(const GroundAtom &atom, const Interval &rho);
  void assert_set(const GroundAtom &atom, const IntervalSet &where);

  const std::map<GroundAtom, IntervalSet> &atoms() const { return atoms_; }

  // Pointwise containment over all atoms and time points.
  bool contained_in(const Interpretation &other) const;

  // Hull of all finite run endpoints; (0,0) when there are none.
  std::pair<Time, Time> support_hull() const;

  // .dfacts text (one fact per run, unbounded runs use the tail markers).
  std::string to_string() const;

  friend bool operator==(const Interpretation &a, const Interpretation &b) {
    return a.atoms_ == b.atoms_;
  }
  friend bool operator!=(const Interpretation &a, const Interpretation &b) {
    return !(a == b);
  }
  friend bool operator<(const Interpretation &a, const Interpretation &b) {
    return a.atoms_ < b.atoms_;
  }

private:
  std::map<GroundAtom, IntervalSet> atoms_;
};

// The canonical interpretation of a dataset: each fact asserted, nothing
// else.
Interpretation canonical_interpretation(const Dataset &dataset);

// Where relational truth comes from during evaluation. Values must be
// constant outside [hull] widened by the probed atom's reach.
class ValueSource {
public:
  virtual ~ValueSource() = default;
  virtual bool holds_rel(const MetricAtom &rel, Time t) const = 0;
  virtual std::pair<Time, Time> hull() const = 0;
};

class InterpretationSource final : public ValueSource {
public:
  explicit InterpretationSource(const Interpretation &interp)
      : interp_(interp), hull_(interp.support_hull()) {}
  bool holds_rel(const MetricAtom &rel, Time t) const override {
    return interp_.holds(rel.ground_atom(), t);
  }
  std::pair<Time, Time> hull() const override { return hull_; }

private:
  const Interpretation &interp_;
  std::pair<Time, Time> hull_;
};

bool eval_metric_atom(const ValueSource &src, const AtomPtr &atom, Time t);
bool models_fact(const ValueSource &src, const AtomPtr &atom,
                 const Interval &rho);
// Dual of models_fact: the atom is false at every point of rho.
bool atom_false_throughout(const ValueSource &src, const AtomPtr &atom,
                           const Interval &rho);

// How far (in time steps) the atom's value can depend on relational values
// away from the probed point: nesting-aware sum of finite interval
// endpoints, plus one per operator. Values of the atom are constant outside
// the interpretation's support hull widened by this amount.
Time atom_reach(const AtomPtr &atom);

// The Table-1 point semantics of ground metric atoms. Quantifiers over
// unbounded ranges are decided on the finite region where values may still
// change, plus one representative point per constant tail.
bool eval_metric_atom(const Interpretation &interp, const AtomPtr &atom,
                      Time t);

// interp |= atom@rho: conjunction of eval over all t in rho. For unbounded
// rho the tail region is handled by two representative points whose values
// must agree (InvariantError otherwise; this is the stabilization
// self-check).
bool models_fact(const Interpretation &interp, const AtomPtr &atom,
                 const Interval &rho);

// D |= M@t under the canonical interpretation of D. Sound and complete for
// metric atoms because every constructor is monotone.
bool dataset_entails(const Dataset &dataset, const AtomPtr &atom, Time t);

} // namespace temporalis

#endif
