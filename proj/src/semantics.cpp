#include "temporalis/semantics.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace temporalis {

namespace {

void collect_rule_atoms(const Rule &r, std::vector<AtomPtr> &out) {
  out.push_back(r.head);
  out.insert(out.end(), r.positive.begin(), r.positive.end());
  out.insert(out.end(), r.negative.begin(), r.negative.end());
}

// Margin around the support hull beyond which every rule atom's value is
// constant. Starts at t_pi+2 and widens by t_pi (three retries) until it
// dominates the largest atom reach.
Time required_margin(const std::vector<Rule> &ground_rules, Time t_pi) {
  Time need = 0;
  std::vector<AtomPtr> atoms;
  for (const Rule &r : ground_rules)
    collect_rule_atoms(r, atoms);
  for (const auto &a : atoms)
    need = std::max(need, atom_reach(a));
  Time margin = t_pi + 2;
  for (int retry = 0; retry < 3 && margin < need + 2; ++retry)
    margin += t_pi;
  if (margin < need + 2)
    throw GuardError("rule atoms reach " + std::to_string(need) +
                     " steps; representative margin did not cover it "
                     "within 3 widenings");
  return margin;
}

struct Hull {
  Time lo = 0;
  Time hi = 0;
  void widen(Time a, Time b) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
};

Hull base_hull(const SearchBox &box, const Dataset &dataset,
               const Interpretation *there) {
  Hull h;
  h.lo = box.window.lo();
  h.hi = box.window.hi();
  auto [dlo, dhi] = data_extent(dataset);
  h.widen(dlo, dhi);
  if (there) {
    auto sh = there->support_hull();
    h.widen(sh.first, sh.second);
  }
  return h;
}

bool body_fires_at(const Interpretation &here, const Interpretation &there,
                   const Rule &rule, Time t) {
  for (const auto &a : rule.positive)
    if (!eval_metric_atom(here, a, t))
      return false;
  for (const auto &a : rule.negative)
    if (eval_metric_atom(there, a, t))
      return false;
  return true;
}

// What asserting the head at one firing point means: a set of relational
// atoms, each over an offset interval relative to the firing point. BOXMINUS
// shifts the obligation into the past, BOXPLUS into the future. A BOTTOM
// leaf makes the head unsatisfiable.
struct HeadObligation {
  bool bottom = false;
  bool trivial = false;  // TOP leaf
  std::vector<std::pair<GroundAtom, Interval>> parts;
};

void head_obligation_rec(const AtomPtr &head, const Interval &offset,
                         HeadObligation &out) {
  switch (head->kind()) {
  case AtomKind::Top:
    return;
  case AtomKind::Bottom:
    out.bottom = true;
    return;
  case AtomKind::Rel:
    out.parts.emplace_back(head->ground_atom(), offset);
    return;
  case AtomKind::BoxMinus:
    head_obligation_rec(head->rhs(), offset.minus(head->rho()), out);
    return;
  case AtomKind::BoxPlus:
    head_obligation_rec(head->rhs(), offset.plus(head->rho()), out);
    return;
  default:
    throw InvariantError("head outside the head grammar: " +
                         head->to_string());
  }
}

HeadObligation head_obligation(const AtomPtr &head) {
  HeadObligation ob;
  head_obligation_rec(head, Interval::point(0), ob);
  if (!ob.bottom && ob.parts.empty())
    ob.trivial = true;
  return ob;
}

struct SaturationResult {
  Interpretation here;
  bool inconsistent = false;  // a BOTTOM head fired
};

// How far to the right of t the atom's value may depend on relational
// values; kPosInf for unbounded future operators.
Time future_reach_of(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return 0;
  case AtomKind::DiamondMinus:
  case AtomKind::BoxMinus:
    return std::max<Time>(0, future_reach_of(a->rhs()) - a->rho().lo());
  case AtomKind::DiamondPlus:
  case AtomKind::BoxPlus:
    if (a->rho().hi_infinite())
      return kPosInf;
    return time_add(a->rho().hi(), future_reach_of(a->rhs()));
  case AtomKind::Since:
    return std::max<Time>(
        0, std::max(future_reach_of(a->lhs()), future_reach_of(a->rhs())));
  case AtomKind::Until:
    if (a->rho().hi_infinite())
      return kPosInf;
    return time_add(a->rho().hi(), std::max(future_reach_of(a->lhs()),
                                            future_reach_of(a->rhs())));
  }
  return kPosInf;
}

// Mirror: dependence to the left of t.
Time past_reach_of(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return 0;
  case AtomKind::DiamondPlus:
  case AtomKind::BoxPlus:
    return std::max<Time>(0, past_reach_of(a->rhs()) - a->rho().lo());
  case AtomKind::DiamondMinus:
  case AtomKind::BoxMinus:
    if (a->rho().hi_infinite())
      return kPosInf;
    return time_add(a->rho().hi(), past_reach_of(a->rhs()));
  case AtomKind::Until:
    return std::max<Time>(
        0, std::max(past_reach_of(a->lhs()), past_reach_of(a->rhs())));
  case AtomKind::Since:
    if (a->rho().hi_infinite())
      return kPosInf;
    return time_add(a->rho().hi(), std::max(past_reach_of(a->lhs()),
                                            past_reach_of(a->rhs())));
  }
  return kPosInf;
}

// The monotone construction: start from the least model of the dataset and
// keep adding fired heads. Firing is probed at every representative point
// and, with stabilized bodies, at whole tails.
SaturationResult saturate(const std::vector<Rule> &ground_rules,
                          const Dataset &dataset, const Interpretation &there,
                          const SearchBox &box, Time t_pi) {
  SaturationResult result;
  Interpretation &here = result.here;
  here = canonical_interpretation(dataset);

  Time margin = required_margin(ground_rules, t_pi);
  Hull hull = base_hull(box, dataset, &there);
  Time rep_lo = hull.lo - margin;
  Time rep_hi = hull.hi + margin;

  std::vector<HeadObligation> obligations;
  obligations.reserve(ground_rules.size());
  for (const Rule &r : ground_rules)
    obligations.push_back(head_obligation(r.head));

  std::size_t involved = box.atoms.size();
  for (const auto &ob : obligations)
    involved += ob.parts.size();
  std::size_t cap =
      (involved + 1) * static_cast<std::size_t>(rep_hi - rep_lo + 5) + 8;

  for (std::size_t pass = 0;; ++pass) {
    if (pass > cap)
      throw InvariantError("least_here failed to reach a fixpoint");
    bool changed = false;
    for (std::size_t ri = 0; ri < ground_rules.size(); ++ri) {
      const Rule &rule = ground_rules[ri];
      const HeadObligation &ob = obligations[ri];
      if (ob.trivial)
        continue;
      for (Time t = rep_lo; t <= rep_hi; ++t) {
        if (!body_fires_at(here, there, rule, t))
          continue;
        if (ob.bottom) {
          result.inconsistent = true;
          return result;
        }
        for (const auto &[atom, off] : ob.parts) {
          Interval where = off.shifted(t);
          const IntervalSet *cur = here.find(atom);
          if (cur && cur->contains(where))
            continue;
          here.assert_fact(atom, where);
          changed = true;
        }
      }
      // Tails: a body that holds on the whole tail fires at every tail
      // point, so the head obligation stretches over the tail too.
      for (int side = 0; side < 2; ++side) {
        Interval tail = side == 0 ? Interval::at_most(rep_lo)
                                  : Interval::at_least(rep_hi);
        InterpretationSource hs(here), ts(there);
        bool fires = true;
        for (const auto &a : rule.positive)
          if (!models_fact(hs, a, tail)) {
            fires = false;
            break;
          }
        if (fires)
          for (const auto &a : rule.negative)
            if (!atom_false_throughout(ts, a, tail)) {
              fires = false;
              break;
            }
        if (!fires)
          continue;
        if (ob.bottom) {
          result.inconsistent = true;
          return result;
        }
        for (const auto &[atom, off] : ob.parts) {
          // union over all firing points of the tail
          Interval where = side == 0
                               ? Interval::make(kNegInf, false,
                                                time_add(rep_lo, off.hi()),
                                                is_finite(time_add(
                                                    rep_lo, off.hi())))
                               : Interval::make(time_add(rep_hi, off.lo()),
                                                is_finite(time_add(
                                                    rep_hi, off.lo())),
                                                kPosInf, false);
          const IntervalSet *cur = here.find(atom);
          if (cur && cur->contains(where))
            continue;
          here.assert_fact(atom, where);
          changed = true;
        }
      }
    }
    // Pumping closure: a frontier column that keeps regenerating itself
    // through strictly-advancing rules extends into the tail. Strict
    // advance (head offset beyond the positive body's reach toward the
    // tail) keeps the induction well-founded, so this stays inside the
    // least fixpoint.
    for (int side = 0; side < 2; ++side) {
      bool rightward = side == 1;
      Time frontier = rightward ? rep_hi : rep_lo;
      Interval stretch = rightward
                             ? Interval::closed(frontier - t_pi - 2, frontier)
                             : Interval::closed(frontier, frontier + t_pi + 2);
      Interval tail = rightward ? Interval::at_least(frontier + 1)
                                : Interval::at_most(frontier - 1);
      std::set<GroundAtom> candidates;
      for (const auto &[atom, set] : here.atoms())
        if (set.contains(stretch) && !set.contains(tail))
          candidates.insert(atom);
      if (candidates.empty())
        continue;
      bool pruned = true;
      while (pruned && !candidates.empty()) {
        pruned = false;
        Interpretation hypothetical = here;
        for (const GroundAtom &a : candidates)
          hypothetical.assert_fact(a, tail);
        Interval firing = rightward ? Interval::at_least(frontier - t_pi)
                                    : Interval::at_most(frontier + t_pi);
        InterpretationSource hs(hypothetical), ts(there);
        for (auto it = candidates.begin(); it != candidates.end();) {
          bool justified = false;
          for (std::size_t ri = 0;
               ri < ground_rules.size() && !justified; ++ri) {
            const HeadObligation &ob = obligations[ri];
            if (ob.bottom || ob.trivial)
              continue;
            Time advance = kNegInf;
            for (const auto &[atom, off] : ob.parts)
              if (atom == *it)
                advance = std::max(
                    advance, rightward ? off.lo() : time_sub(0, off.hi()));
            if (advance == kNegInf || advance < 1)
              continue;
            const Rule &rule = ground_rules[ri];
            Time reach = 0;
            for (const auto &b : rule.positive)
              reach = std::max(reach, rightward ? future_reach_of(b)
                                                : past_reach_of(b));
            if (reach >= advance)
              continue;
            bool fires = true;
            for (const auto &b : rule.positive)
              if (!models_fact(hs, b, firing)) {
                fires = false;
                break;
              }
            if (fires)
              for (const auto &b : rule.negative)
                if (!atom_false_throughout(ts, b, firing)) {
                  fires = false;
                  break;
                }
            justified = fires;
          }
          if (justified) {
            ++it;
          } else {
            it = candidates.erase(it);
            pruned = true;
          }
        }
      }
      for (const GroundAtom &a : candidates) {
        here.assert_fact(a, tail);
        changed = true;
      }
    }
    if (!changed)
      break;
  }
  return result;
}

} // namespace

SearchBox default_search_box(const Program &program, const Dataset &dataset) {
  SearchBox box;
  auto [lo, hi] = data_extent(dataset);
  Time m = program.t_pi() + 1;
  box.window = Interval::closed(lo - m, hi + m);
  for (const auto &a : atom_universe(program, dataset).atoms())
    if (a->is_relational())
      box.atoms.push_back(a->ground_atom());
  return box;
}

bool ht_holds_at(const HTInterpretation &ht, const Rule &rule, Time t) {
  if (!rule.is_ground())
    throw InvariantError("ht_holds_at on a non-ground rule");
  bool neg_blocked = false;
  for (const auto &a : rule.negative)
    if (eval_metric_atom(ht.there, a, t)) {
      neg_blocked = true;
      break;
    }
  if (!neg_blocked) {
    bool here_fires = true;
    for (const auto &a : rule.positive)
      if (!eval_metric_atom(ht.here, a, t)) {
        here_fires = false;
        break;
      }
    if (here_fires && !eval_metric_atom(ht.here, rule.head, t))
      return false;
    bool there_fires = true;
    for (const auto &a : rule.positive)
      if (!eval_metric_atom(ht.there, a, t)) {
        there_fires = false;
        break;
      }
    if (there_fires && !eval_metric_atom(ht.there, rule.head, t))
      return false;
  }
  return true;
}

bool ht_model_of_rules(const HTInterpretation &ht,
                       const std::vector<Rule> &ground_rules, Time t_pi) {
  Time margin = required_margin(ground_rules, t_pi);
  auto hh = ht.here.support_hull();
  auto th = ht.there.support_hull();
  Time lo = std::min(hh.first, th.first) - margin;
  Time hi = std::max(hh.second, th.second) + margin;
  for (const Rule &r : ground_rules)
    for (Time t = lo; t <= hi; ++t)
      if (!ht_holds_at(ht, r, t))
        return false;
  return true;
}

Interpretation least_here(const std::vector<Rule> &ground_rules,
                          const Dataset &dataset, const Interpretation &there,
                          const SearchBox &box) {
  Time t_pi = 1;
  for (const Rule &r : ground_rules) {
    Program p({r});
    t_pi = std::max(t_pi, p.t_pi());
  }
  SaturationResult r = saturate(ground_rules, dataset, there, box, t_pi);
  if (r.inconsistent)
    throw InputError(
        "least_here: a rule with a BOTTOM head fires; (there, there) is "
        "not an HT-model");
  if (!r.here.contained_in(there))
    throw InvariantError(
        "least_here produced facts outside `there`; the precondition "
        "that (there, there) is an HT-model was violated");
  return r.here;
}

Interpretation least_model(const Program &program, const Dataset &dataset,
                           const SearchBox &box) {
  for (const Rule &r : program.rules())
    if (!r.is_positive())
      throw InputError("least_model requires a positive program");
  SaturationResult r = saturate(ground(program, dataset), dataset,
                                Interpretation{}, box, program.t_pi());
  if (r.inconsistent)
    throw InputError("least_model: a BOTTOM head fires; no model exists");
  return r.here;
}

bool check_stable_witness(const Program &program, const Dataset &dataset,
                          const Interpretation &candidate,
                          const SearchBox &box) {
  std::vector<Rule> rules = ground(program, dataset);
  if (!canonical_interpretation(dataset).contained_in(candidate))
    return false;
  HTInterpretation ht{candidate, candidate};
  if (!ht_model_of_rules(ht, rules, program.t_pi()))
    return false;
  return least_here(rules, dataset, candidate, box) == candidate;
}

namespace {

// Candidate truth patterns during enumeration: one bit row per box atom over
// the box columns, plus one constant bit per tail.
struct Pattern {
  const SearchBox *box = nullptr;
  Time lo = 0;
  int cols = 0;
  std::vector<uint64_t> rows;
  uint64_t ltails = 0;  // bit per atom
  uint64_t rtails = 0;

  bool value(int atom, Time t) const {
    if (t < lo)
      return (ltails >> atom) & 1;
    if (t >= lo + cols)
      return (rtails >> atom) & 1;
    return (rows[atom] >> (t - lo)) & 1;
  }

  Interpretation to_interpretation() const {
    Interpretation interp;
    for (std::size_t a = 0; a < box->atoms.size(); ++a) {
      std::vector<Interval> runs;
      if ((ltails >> a) & 1)
        runs.push_back(Interval::at_most(lo - 1));
      for (int c = 0; c < cols; ++c)
        if ((rows[a] >> c) & 1)
          runs.push_back(Interval::point(lo + c));
      if ((rtails >> a) & 1)
        runs.push_back(Interval::at_least(lo + cols));
      IntervalSet set = IntervalSet::coalesce(std::move(runs));
      if (!set.is_empty())
        interp.assert_set(box->atoms[a], set);
    }
    return interp;
  }
};

class PatternSource final : public ValueSource {
public:
  PatternSource(const Pattern &p,
                const std::unordered_map<const MetricAtom *, int> &rel_index)
      : p_(p), rel_index_(rel_index) {}

  bool holds_rel(const MetricAtom &rel, Time t) const override {
    auto it = rel_index_.find(&rel);
    if (it == rel_index_.end())
      throw InvariantError("pattern lookup for an unindexed atom");
    if (it->second < 0)
      return false;  // relational atom outside the box vocabulary
    return p_.value(it->second, t);
  }
  std::pair<Time, Time> hull() const override {
    return {p_.lo, p_.lo + p_.cols - 1};
  }

private:
  const Pattern &p_;
  const std::unordered_map<const MetricAtom *, int> &rel_index_;
};

struct ScheduledCheck {
  int rule = 0;
  Time t = 0;
};

struct OracleSearch {
  const Program *program = nullptr;
  const Dataset *dataset = nullptr;
  const SearchBox *box = nullptr;
  std::vector<Rule> rules;
  std::unordered_map<const MetricAtom *, int> rel_index;
  int natoms = 0;
  int cols = 0;
  Time rep_lo = 0;
  Time rep_hi = 0;
  std::vector<uint64_t> forced;  // per column (0..cols-1), dataset bits
  // stage s (0 = left tails, 1..cols = columns, cols+1 = right tails)
  std::vector<std::vector<ScheduledCheck>> schedule;
  std::vector<Interpretation> found;
  unsigned long long visited = 0;
  unsigned long long max_candidates = 0;

  int stage_of_position(Time t) const {
    Time lo = box->window.lo();
    if (t < lo)
      return 0;
    if (t > box->window.hi())
      return cols + 1;
    return static_cast<int>(t - lo) + 1;
  }

  void index_rel_atoms(const AtomPtr &a) {
    switch (a->kind()) {
    case AtomKind::Top:
    case AtomKind::Bottom:
      return;
    case AtomKind::Rel: {
      if (rel_index.count(a.get()))
        return;
      GroundAtom ga = a->ground_atom();
      int row = -1;
      for (std::size_t i = 0; i < box->atoms.size(); ++i)
        if (box->atoms[i] == ga) {
          row = static_cast<int>(i);
          break;
        }
      rel_index[a.get()] = row;
      return;
    }
    case AtomKind::Since:
    case AtomKind::Until:
      index_rel_atoms(a->lhs());
      index_rel_atoms(a->rhs());
      return;
    default:
      index_rel_atoms(a->rhs());
      return;
    }
  }

  void prepare() {
    rules = ground(*program, *dataset);
    for (const Rule &r : rules) {
      index_rel_atoms(r.head);
      for (const auto &a : r.positive)
        index_rel_atoms(a);
      for (const auto &a : r.negative)
        index_rel_atoms(a);
    }
    natoms = static_cast<int>(box->atoms.size());
    cols = static_cast<int>(box->window.length()) + 1;
    Time margin = required_margin(rules, program->t_pi());
    Hull hull = base_hull(*box, *dataset, nullptr);
    rep_lo = hull.lo - margin;
    rep_hi = hull.hi + margin;

    forced.assign(static_cast<std::size_t>(cols), 0);
    for (const Fact &f : dataset->facts()) {
      int row = -1;
      for (std::size_t i = 0; i < box->atoms.size(); ++i)
        if (box->atoms[i] == f.atom) {
          row = static_cast<int>(i);
          break;
        }
      if (row < 0)
        throw InputError("oracle: dataset atom " + f.atom.to_string() +
                         " is not in the search box vocabulary");
      if (!box->window.contains(f.rho))
        throw InputError("oracle: dataset fact " + f.to_string() +
                         " lies outside the search box window");
      for (Time t = f.rho.lo(); t <= f.rho.hi(); ++t)
        forced[static_cast<std::size_t>(t - box->window.lo())] |= 1ull << row;
    }

    schedule.assign(static_cast<std::size_t>(cols) + 2, {});
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      Time fut = 0;
      std::vector<AtomPtr> atoms;
      collect_rule_atoms(rules[ri], atoms);
      for (const auto &a : atoms)
        fut = std::max(fut, future_reach_of(a));
      for (Time t = rep_lo; t <= rep_hi; ++t) {
        int stage = fut == kPosInf
                        ? cols + 1
                        : std::max(stage_of_position(t),
                                   stage_of_position(time_add(t, fut)));
        schedule[static_cast<std::size_t>(stage)].push_back(
            ScheduledCheck{static_cast<int>(ri), t});
      }
    }
  }

  bool checks_pass(const Pattern &p, int stage) const {
    PatternSource src(p, rel_index);
    for (const ScheduledCheck &c : schedule[static_cast<std::size_t>(stage)]) {
      const Rule &rule = rules[static_cast<std::size_t>(c.rule)];
      bool fires = true;
      for (const auto &a : rule.negative)
        if (eval_metric_atom(src, a, c.t)) {
          fires = false;
          break;
        }
      if (fires)
        for (const auto &a : rule.positive)
          if (!eval_metric_atom(src, a, c.t)) {
            fires = false;
            break;
          }
      if (fires && !eval_metric_atom(src, rule.head, c.t))
        return false;
    }
    return true;
  }

  void finish_candidate(const Pattern &p) {
    Interpretation there = p.to_interpretation();
    if (!canonical_interpretation(*dataset).contained_in(there))
      return;  // cannot happen: dataset bits are forced
    Interpretation here;
    try {
      here = least_here(rules, *dataset, there, *box);
    } catch (const InputError &) {
      return;  // (there, there) was not an HT-model after all
    }
    if (here == there)
      found.push_back(std::move(there));
  }

  void dfs(Pattern &p, int stage) {
    if (++visited > max_candidates)
      throw GuardError("oracle candidate guard exceeded (" +
                       std::to_string(max_candidates) + ")");
    if (stage == cols + 2) {
      finish_candidate(p);
      return;
    }
    uint64_t limit = 1ull << natoms;
    for (uint64_t mask = 0; mask < limit; ++mask) {
      if (stage == 0) {
        p.ltails = mask;
      } else if (stage <= cols) {
        uint64_t need = forced[static_cast<std::size_t>(stage - 1)];
        if ((mask & need) != need)
          continue;
        for (int a = 0; a < natoms; ++a) {
          if ((mask >> a) & 1)
            p.rows[static_cast<std::size_t>(a)] |= 1ull << (stage - 1);
          else
            p.rows[static_cast<std::size_t>(a)] &= ~(1ull << (stage - 1));
        }
      } else {
        p.rtails = mask;
      }
      if (checks_pass(p, stage))
        dfs(p, stage + 1);
    }
  }
};

int env_threads() {
  const char *s = std::getenv("TEMPORALIS_THREADS");
  if (!s)
    return 1;
  int v = std::atoi(s);
  return v > 0 ? v : 1;
}

} // namespace

std::vector<Interpretation> oracle_stable_models(const Program &program,
                                                 const Dataset &dataset,
                                                 const SearchBox &box,
                                                 const OracleLimits &limits) {
  if (!dataset.bounded())
    throw InputError("oracle: dataset must be bounded");
  if (!box.window.bounded())
    throw InputError("oracle: search box window must be bounded");
  if (box.atoms.empty() && !dataset.facts().empty())
    throw InputError("oracle: search box has no atoms");

  OracleSearch search;
  search.program = &program;
  search.dataset = &dataset;
  search.box = &box;
  search.max_candidates = limits.max_candidates;
  search.prepare();

  if (box.atoms.size() >= 63)
    throw GuardError("oracle box has too many atoms");
  if (search.cols > 62)
    throw GuardError("oracle box window is too wide");

  int threads = limits.threads > 0 ? limits.threads : env_threads();
  if (threads <= 1 || search.natoms == 0) {
    Pattern p;
    p.box = &box;
    p.lo = box.window.lo();
    p.cols = search.cols;
    p.rows.assign(static_cast<std::size_t>(search.natoms), 0);
    search.dfs(p, 0);
  } else {
    // Split on the left-tail assignment; each worker explores a stride.
    uint64_t limit = 1ull << search.natoms;
    unsigned n = std::min<uint64_t>(static_cast<uint64_t>(threads), limit);
    std::vector<OracleSearch> workers(n, search);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&, w] {
        try {
          OracleSearch &self = workers[w];
          self.max_candidates = search.max_candidates / n + 1;
          Pattern p;
          p.box = &box;
          p.lo = box.window.lo();
          p.cols = self.cols;
          p.rows.assign(static_cast<std::size_t>(self.natoms), 0);
          for (uint64_t mask = w; mask < limit; mask += n) {
            p.ltails = mask;
            if (self.checks_pass(p, 0))
              self.dfs(p, 1);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error)
            first_error = std::current_exception();
        }
      });
    }
    for (auto &t : pool)
      t.join();
    if (first_error)
      std::rethrow_exception(first_error);
    for (const auto &w : workers)
      search.found.insert(search.found.end(), w.found.begin(), w.found.end());
  }

  std::sort(search.found.begin(), search.found.end());
  search.found.erase(std::unique(search.found.begin(), search.found.end()),
                     search.found.end());
  return search.found;
}

} // namespace temporalis
