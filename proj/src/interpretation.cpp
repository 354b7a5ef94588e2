#include "temporalis/interpretation.hpp"

#include <algorithm>

namespace temporalis {

bool Interpretation::holds(const GroundAtom &atom, Time t) const {
  auto it = atoms_.find(atom);
  return it != atoms_.end() && it->second.contains(t);
}

const IntervalSet *Interpretation::find(const GroundAtom &atom) const {
  auto it = atoms_.find(atom);
  return it == atoms_.end() ? nullptr : &it->second;
}

void Interpretation::assert_fact(const GroundAtom &atom, const Interval &rho) {
  atoms_[atom].add(rho);
}

void Interpretation::assert_set(const GroundAtom &atom,
                                const IntervalSet &where) {
  if (where.is_empty())
    return;
  auto it = atoms_.find(atom);
  if (it == atoms_.end())
    atoms_.emplace(atom, where);
  else
    it->second = it->second.unite(where);
}

bool Interpretation::contained_in(const Interpretation &other) const {
  for (const auto &[atom, set] : atoms_) {
    const IntervalSet *theirs = other.find(atom);
    if (!theirs) {
      if (!set.is_empty())
        return false;
      continue;
    }
    if (!set.subset_of(*theirs))
      return false;
  }
  return true;
}

std::pair<Time, Time> Interpretation::support_hull() const {
  std::optional<std::pair<Time, Time>> hull;
  for (const auto &[atom, set] : atoms_) {
    auto h = set.finite_hull();
    if (!h)
      continue;
    if (!hull)
      hull = h;
    else {
      hull->first = std::min(hull->first, h->first);
      hull->second = std::max(hull->second, h->second);
    }
  }
  return hull.value_or(std::pair<Time, Time>{0, 0});
}

std::string Interpretation::to_string() const {
  std::string s;
  for (const auto &[atom, set] : atoms_)
    for (const Interval &run : set.runs()) {
      s += atom.to_string();
      s += "@";
      s += run.punctual() ? time_to_string(run.lo()) : run.to_string();
      s += " .\n";
    }
  return s;
}

Interpretation canonical_interpretation(const Dataset &dataset) {
  Interpretation interp;
  for (const Fact &f : dataset.facts())
    interp.assert_fact(f.atom, f.rho);
  return interp;
}

namespace {

Time reach_of(const MetricAtom &atom) {
  switch (atom.kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return 0;
  default: {
    const Interval &rho = atom.rho();
    Time span = rho.lo();
    if (!rho.hi_infinite() && rho.hi() > span)
      span = rho.hi();
    Time sub = reach_of(*atom.rhs());
    if (is_binary_op(atom.kind()))
      sub = std::max(sub, reach_of(*atom.lhs()));
    return span + 1 + sub;
  }
  }
}

} // namespace

Time atom_reach(const AtomPtr &atom) { return reach_of(*atom); }

namespace {

struct EvalContext {
  const ValueSource &src;
  Time hull_lo;
  Time hull_hi;
};

bool eval(const EvalContext &ctx, const MetricAtom &atom, Time t);

// Existential/universal sweep of `operand` over the time points t' with
// t - t' in rho (past = true) or t' - t in rho. Unbounded ranges stop one
// point inside the constant tail; values there repeat forever.
bool sweep(const EvalContext &ctx, const MetricAtom &operand, Time t,
           const Interval &rho, bool past, bool existential) {
  Time near = past ? t - rho.lo() : t + rho.lo();
  Time far;
  if (rho.hi_infinite()) {
    Time reach = reach_of(operand);
    far = past ? std::min(near, ctx.hull_lo - reach - 2)
               : std::max(near, ctx.hull_hi + reach + 2);
  } else {
    far = past ? t - rho.hi() : t + rho.hi();
  }
  Time step = past ? -1 : 1;
  for (Time u = near;; u += step) {
    if (eval(ctx, operand, u) == existential)
      return existential;
    if (u == far)
      break;
  }
  return !existential;
}

// Since/Until: look for a witness for rhs with lhs holding on the open range
// between the witness and t. For unbounded rho the search may stop one point
// inside the constant tail: deeper witnesses see the same rhs value and an
// even longer lhs obligation.
bool since_until(const EvalContext &ctx, const MetricAtom &atom, Time t,
                 bool past) {
  const Interval &rho = atom.rho();
  const MetricAtom &lhs = *atom.lhs();
  const MetricAtom &rhs = *atom.rhs();
  Time near = past ? t - rho.lo() : t + rho.lo();
  Time far;
  if (rho.hi_infinite()) {
    Time reach = std::max(reach_of(lhs), reach_of(rhs));
    far = past ? std::min(near, ctx.hull_lo - reach - 2)
               : std::max(near, ctx.hull_hi + reach + 2);
  } else {
    far = past ? t - rho.hi() : t + rho.hi();
  }
  Time step = past ? -1 : 1;
  // lhs must hold on the open range (witness, t) / (t, witness).
  bool chain = true;
  for (Time u = t + step; (past ? u > near : u < near); u += step) {
    if (!eval(ctx, lhs, u)) {
      chain = false;
      break;
    }
  }
  if (chain) {
    for (Time u = near;; u += step) {
      if (eval(ctx, rhs, u))
        return true;
      if (u == far)
        break;
      if (!eval(ctx, lhs, u)) {
        chain = false;
        break;
      }
    }
  }
  return false;
}

bool eval(const EvalContext &ctx, const MetricAtom &atom, Time t) {
  switch (atom.kind()) {
  case AtomKind::Top:
    return true;
  case AtomKind::Bottom:
    return false;
  case AtomKind::Rel:
    return ctx.src.holds_rel(atom, t);
  case AtomKind::DiamondMinus:
    return sweep(ctx, *atom.rhs(), t, atom.rho(), true, true);
  case AtomKind::DiamondPlus:
    return sweep(ctx, *atom.rhs(), t, atom.rho(), false, true);
  case AtomKind::BoxMinus:
    return sweep(ctx, *atom.rhs(), t, atom.rho(), true, false);
  case AtomKind::BoxPlus:
    return sweep(ctx, *atom.rhs(), t, atom.rho(), false, false);
  case AtomKind::Since:
    return since_until(ctx, atom, t, true);
  case AtomKind::Until:
    return since_until(ctx, atom, t, false);
  }
  throw InvariantError("eval: unknown atom kind");
}

} // namespace

bool eval_metric_atom(const ValueSource &src, const AtomPtr &atom, Time t) {
  if (!atom->is_ground())
    throw InvariantError("eval_metric_atom on a non-ground atom");
  auto hull = src.hull();
  EvalContext ctx{src, hull.first, hull.second};
  return eval(ctx, *atom, t);
}

namespace {

// Shared sweep for models_fact / atom_false_throughout: the atom must have
// the requested value at every point of rho.
bool value_throughout(const ValueSource &src, const AtomPtr &atom,
                      const Interval &rho, bool wanted) {
  auto hull = src.hull();
  EvalContext ctx{src, hull.first, hull.second};
  Time reach = atom_reach(atom);
  Time region_lo = hull.first - reach - 2;
  Time region_hi = hull.second + reach + 2;

  Time lo, hi;
  if (rho.lo_infinite() && rho.hi_infinite()) {
    lo = region_lo - 1;
    hi = region_hi + 1;
  } else if (rho.lo_infinite()) {
    hi = rho.hi();
    lo = std::min(region_lo - 1, hi);
  } else if (rho.hi_infinite()) {
    lo = rho.lo();
    hi = std::max(region_hi + 1, lo);
  } else {
    lo = rho.lo();
    hi = rho.hi();
  }
  for (Time t = lo; t <= hi; ++t)
    if (eval(ctx, *atom, t) != wanted)
      return false;
  // Tail representatives: the value one point further out must agree with
  // the edge value, otherwise the stabilization assumption is broken.
  if (rho.lo_infinite()) {
    if (eval(ctx, *atom, lo - 1) != eval(ctx, *atom, lo))
      throw InvariantError("left tail of " + atom->to_string() +
                           " did not stabilize");
  }
  if (rho.hi_infinite()) {
    if (eval(ctx, *atom, hi + 1) != eval(ctx, *atom, hi))
      throw InvariantError("right tail of " + atom->to_string() +
                           " did not stabilize");
  }
  return true;
}

} // namespace

bool models_fact(const ValueSource &src, const AtomPtr &atom,
                 const Interval &rho) {
  return value_throughout(src, atom, rho, true);
}

bool atom_false_throughout(const ValueSource &src, const AtomPtr &atom,
                           const Interval &rho) {
  return value_throughout(src, atom, rho, false);
}

bool eval_metric_atom(const Interpretation &interp, const AtomPtr &atom,
                      Time t) {
  return eval_metric_atom(InterpretationSource(interp), atom, t);
}

bool models_fact(const Interpretation &interp, const AtomPtr &atom,
                 const Interval &rho) {
  return models_fact(InterpretationSource(interp), atom, rho);
}

bool dataset_entails(const Dataset &dataset, const AtomPtr &atom, Time t) {
  return eval_metric_atom(canonical_interpretation(dataset), atom, t);
}

} // namespace temporalis
