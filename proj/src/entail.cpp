#include "temporalis/entail.hpp"

namespace temporalis {

namespace {

// Anchor time point inside rho: its least integer, or min(0, hi) when rho
// extends to -inf. Deterministic so reductions are reproducible.
Time anchor_point(const Interval &rho) {
  if (!rho.lo_infinite())
    return rho.lo();
  return std::min<Time>(0, rho.hi());
}

// BOX[0,0] M is M; keeping the identity makes punctual queries on
// forward-propagating programs stay in the fragment.
AtomPtr box_or_self(AtomKind box, const Interval &rho, const AtomPtr &m) {
  if (rho.bounded() && rho.lo() == 0 && rho.hi() == 0)
    return m;
  return MetricAtom::unary(box, rho, m);
}

std::string fresh_predicate(const Program &program, const Dataset &dataset,
                            const std::string &base) {
  std::set<std::string> used;
  for (const auto &[p, arity] : program.predicates())
    used.insert(p);
  for (const Fact &f : dataset.facts())
    used.insert(f.atom.pred);
  int k = 0;
  std::string name;
  do {
    name = "_ent" + std::to_string(++k) + "_" + base;
  } while (used.count(name));
  return name;
}

} // namespace

EntailmentReduction build_entailment_reduction(const Program &program,
                                               const Dataset &dataset,
                                               const EntailmentQuery &query) {
  const GroundAtom &fact = query.fact_atom;
  const Interval &rho = query.rho;
  Time t = anchor_point(rho);

  // rho1 covers rho's part at or before t, rho2 the part at or after t
  Interval rho1 = Interval::make(0, true, time_sub(t, rho.lo()),
                                 !rho.lo_infinite());
  Interval rho2 = Interval::make(0, true, time_sub(rho.hi(), t),
                                 !rho.hi_infinite());

  std::string marker = fresh_predicate(program, dataset, fact.pred);
  std::vector<Term> vars;
  for (std::size_t i = 0; i < fact.args.size(); ++i)
    vars.push_back(Term{true, "X" + std::to_string(i + 1)});
  AtomPtr marker_atom = MetricAtom::rel(marker, vars);
  AtomPtr queried = MetricAtom::rel(fact.pred, vars);

  std::vector<Rule> rules(program.rules().begin(), program.rules().end());
  if (query.mode == EntailmentMode::Brave) {
    // BOTTOM <- marker, not BOXMINUS[rho1] P ; BOTTOM <- marker, not
    // BOXPLUS[rho2] P : a stable model exists iff P holds on all of rho.
    Rule past;
    past.head = MetricAtom::bottom();
    past.positive = {marker_atom};
    past.negative = {box_or_self(AtomKind::BoxMinus, rho1, queried)};
    rules.push_back(std::move(past));
    Rule future;
    future.head = MetricAtom::bottom();
    future.positive = {marker_atom};
    future.negative = {box_or_self(AtomKind::BoxPlus, rho2, queried)};
    rules.push_back(std::move(future));
  } else {
    // BOTTOM <- marker, BOXMINUS[rho1] P, BOXPLUS[rho2] P : a stable model
    // exists iff some stable model misses P somewhere on rho.
    Rule both;
    both.head = MetricAtom::bottom();
    both.positive = {marker_atom,
                     box_or_self(AtomKind::BoxMinus, rho1, queried),
                     box_or_self(AtomKind::BoxPlus, rho2, queried)};
    rules.push_back(std::move(both));
  }

  std::vector<Fact> facts(dataset.facts().begin(), dataset.facts().end());
  facts.push_back(Fact{GroundAtom{marker, fact.args}, Interval::point(t)});

  EntailmentReduction red;
  red.program = Program(std::move(rules));
  red.dataset = Dataset(std::move(facts));
  red.entailed_iff_exists = query.mode == EntailmentMode::Brave;
  return red;
}

bool entails(const Program &program, const Dataset &dataset,
             const EntailmentQuery &query, StableCheckLimits limits) {
  if (!query.rho.bounded() && query.rho.lo_infinite() &&
      query.rho.hi_infinite())
    ;  // (-inf, inf) queries are fine; anchor falls back to 0
  EntailmentReduction red = build_entailment_reduction(program, dataset, query);
  Program normalized = normalize(red.program).output;
  StableChecker checker(normalized, red.dataset, limits);
  bool exists;
  if (is_forward_propagating(normalized))
    exists = checker.has_stable_model_fp().has_value();
  else
    exists = checker.has_stable_model_general().has_value();
  return red.entailed_iff_exists ? exists : !exists;
}

} // namespace temporalis
