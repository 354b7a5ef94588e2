#include "temporalis/normalize.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace temporalis {

namespace {

// Folds operators whose value is constant regardless of the interpretation:
// boxes/diamonds over TOP/BOTTOM, SINCE/UNTIL with constant right operands.
AtomPtr fold_constants(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return a;
  case AtomKind::BoxMinus:
  case AtomKind::BoxPlus: {
    AtomPtr sub = fold_constants(a->rhs());
    if (sub->kind() == AtomKind::Top)
      return MetricAtom::top();
    if (sub->kind() == AtomKind::Bottom)
      return MetricAtom::bottom();
    return MetricAtom::unary(a->kind(), a->rho(), sub);
  }
  case AtomKind::DiamondMinus:
  case AtomKind::DiamondPlus: {
    AtomPtr sub = fold_constants(a->rhs());
    if (sub->kind() == AtomKind::Top)
      return MetricAtom::top();
    if (sub->kind() == AtomKind::Bottom)
      return MetricAtom::bottom();
    return MetricAtom::unary(a->kind(), a->rho(), sub);
  }
  case AtomKind::Since:
  case AtomKind::Until: {
    AtomPtr l = fold_constants(a->lhs());
    AtomPtr r = fold_constants(a->rhs());
    if (r->kind() == AtomKind::Bottom)
      return MetricAtom::bottom();
    if (r->kind() == AtomKind::Top && l->kind() == AtomKind::Top)
      return MetricAtom::top();
    return MetricAtom::binary(a->kind(), a->rho(), l, r);
  }
  }
  return a;
}

std::vector<Term> atom_terms(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Rel:
    return a->args();
  default:
    return {};
  }
}

std::string operand_base(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Top:
    return "top";
  case AtomKind::Bottom:
    return "bot";
  case AtomKind::Rel:
    return a->pred();
  default:
    return "m";
  }
}

class Rewriter {
public:
  explicit Rewriter(const Program &program) {
    for (const auto &[pred, arity] : program.predicates())
      used_names_.insert(pred);
    work_.assign(program.rules().begin(), program.rules().end());
  }

  NormalizationReport run() {
    eliminate_head_boxes();
    eliminate_nesting();
    eliminate_diamonds();
    eliminate_unbounded();
    std::vector<Rule> rules(work_.begin(), work_.end());
    rules.insert(rules.end(), done_.begin(), done_.end());
    NormalizationReport report;
    report.output = Program(std::move(rules));
    report.fresh_predicates = std::move(fresh_);
    return report;
  }

private:
  std::string fresh_name(const std::string &base, const std::string &step,
                         std::vector<std::string> sources) {
    std::string name;
    do {
      name = "_nf" + std::to_string(++counter_) + "_" + base;
    } while (used_names_.count(name));
    used_names_.insert(name);
    fresh_[name] = FreshPredicateInfo{std::move(sources), step};
    return name;
  }

  // -- step 1: drop TOP heads, move boxes out of heads ----------------------

  void eliminate_head_boxes() {
    std::deque<Rule> out;
    for (Rule r : work_) {
      AtomPtr head = fold_constants(r.head);
      if (head->kind() == AtomKind::Top)
        continue;  // trivially satisfied
      if (head->kind() == AtomKind::Bottom || head->kind() == AtomKind::Rel) {
        r.head = head;
        out.push_back(std::move(r));
        continue;
      }
      // peel the box chain down to the relational leaf
      std::vector<std::pair<AtomKind, Interval>> boxes;
      AtomPtr leaf = head;
      while (is_unary_op(leaf->kind())) {
        boxes.emplace_back(leaf->kind(), leaf->rho());
        leaf = leaf->rhs();
      }
      std::string name =
          fresh_name(leaf->pred(), "head-boxes", {leaf->pred()});
      AtomPtr fresh_leaf = MetricAtom::rel(name, leaf->args());
      Rule define;  // P'(s) <- B
      define.head = fresh_leaf;
      define.positive = r.positive;
      define.negative = r.negative;
      out.push_back(std::move(define));
      // P(s) <- <>1 ... <>n P'(s), diamonds mirroring the boxes
      AtomPtr chain = fresh_leaf;
      for (auto it = boxes.rbegin(); it != boxes.rend(); ++it) {
        AtomKind diamond = it->first == AtomKind::BoxMinus
                               ? AtomKind::DiamondPlus
                               : AtomKind::DiamondMinus;
        chain = MetricAtom::unary(diamond, it->second, chain);
      }
      Rule reattach;
      reattach.head = leaf;
      reattach.positive = {chain};
      out.push_back(std::move(reattach));
    }
    work_ = std::move(out);
  }

  // -- step 2: flatten nested operators in bodies ---------------------------

  struct NestedHit {
    bool found = false;
    AtomPtr inner;
  };

  // innermost-leftmost compound atom sitting under another operator
  static void find_nested(const AtomPtr &a, bool under_op, NestedHit &hit) {
    if (hit.found)
      return;
    switch (a->kind()) {
    case AtomKind::Top:
    case AtomKind::Bottom:
    case AtomKind::Rel:
      return;
    case AtomKind::Since:
    case AtomKind::Until:
      find_nested(a->lhs(), true, hit);
      find_nested(a->rhs(), true, hit);
      if (!hit.found && under_op) {
        hit.found = true;
        hit.inner = a;
      }
      return;
    default:
      find_nested(a->rhs(), true, hit);
      if (!hit.found && under_op) {
        hit.found = true;
        hit.inner = a;
      }
      return;
    }
  }

  static AtomPtr replace_occurrence(const AtomPtr &a, const AtomPtr &what,
                                    const AtomPtr &with, bool &done) {
    if (!done && a.get() == what.get()) {
      done = true;
      return with;
    }
    switch (a->kind()) {
    case AtomKind::Top:
    case AtomKind::Bottom:
    case AtomKind::Rel:
      return a;
    case AtomKind::Since:
    case AtomKind::Until: {
      AtomPtr l = replace_occurrence(a->lhs(), what, with, done);
      AtomPtr r = replace_occurrence(a->rhs(), what, with, done);
      return MetricAtom::binary(a->kind(), a->rho(), l, r);
    }
    default:
      return MetricAtom::unary(a->kind(), a->rho(),
                               replace_occurrence(a->rhs(), what, with, done));
    }
  }

  // replace one nested occurrence in the body; returns false if none left
  bool flatten_one(const Rule &r, std::deque<Rule> &out) {
    for (std::size_t pi = 0; pi < r.positive.size() + r.negative.size();
         ++pi) {
      bool is_neg = pi >= r.positive.size();
      const AtomPtr &body_atom =
          is_neg ? r.negative[pi - r.positive.size()] : r.positive[pi];
      NestedHit hit;
      find_nested(body_atom, false, hit);
      if (!hit.found)
        continue;
      const AtomPtr &m = hit.inner;
      if (is_unary_op(m->kind())) {
        // replace with P'(s), add P'(s) <- M
        std::vector<Term> terms = atom_terms(m->rhs());
        std::string name = fresh_name(operand_base(m->rhs()), "nesting",
                                      {operand_base(m->rhs())});
        AtomPtr fresh = MetricAtom::rel(name, terms);
        Rule define;
        define.head = fresh;
        define.positive = {m};
        out.push_back(std::move(define));
        Rule rewritten = r;
        bool done = false;
        AtomPtr &slot = is_neg ? rewritten.negative[pi - r.positive.size()]
                               : rewritten.positive[pi];
        slot = replace_occurrence(body_atom, m, fresh, done);
        out.push_back(std::move(rewritten));
        return true;
      }
      // SINCE/UNTIL nested: the three-case split
      bool is_since = m->kind() == AtomKind::Since;
      const Interval &rho = m->rho();
      AtomPtr p1 = m->lhs();
      AtomPtr p2 = m->rhs();
      AtomKind box = is_since ? AtomKind::BoxMinus : AtomKind::BoxPlus;
      AtomKind diamond =
          is_since ? AtomKind::DiamondMinus : AtomKind::DiamondPlus;
      auto emit_case = [&](const AtomPtr &with) {
        Rule variant = r;
        bool done = false;
        AtomPtr &slot = is_neg ? variant.negative[pi - r.positive.size()]
                               : variant.positive[pi];
        slot = replace_occurrence(body_atom, m, fold_constants(with), done);
        out.push_back(std::move(variant));
      };
      if (rho.contains(0))
        emit_case(p2);
      if (rho.contains(1))
        emit_case(MetricAtom::unary(box, Interval::point(1), p2));
      {
        std::vector<Term> terms = atom_terms(p1);
        std::vector<Term> t2 = atom_terms(p2);
        terms.insert(terms.end(), t2.begin(), t2.end());
        std::string base = operand_base(p1) + "_" + operand_base(p2);
        std::string name =
            fresh_name(base, "nesting", {operand_base(p1), operand_base(p2)});
        AtomPtr fresh = MetricAtom::rel(name, terms);
        Rule define;  // P'(s1,s2) <- P1 S rho P2, DIAMONDMINUS[0,inf) P1
        define.head = fresh;
        define.positive = {m, fold_constants(MetricAtom::unary(
                                  diamond, Interval::at_least(0), p1))};
        strip_constant_positives(define);
        out.push_back(std::move(define));
        emit_case(fresh);
      }
      return true;
    }
    return false;
  }

  void eliminate_nesting() {
    std::deque<Rule> pending = std::move(work_);
    work_.clear();
    while (!pending.empty()) {
      Rule r = std::move(pending.front());
      pending.pop_front();
      std::deque<Rule> produced;
      if (flatten_one(r, produced)) {
        for (auto &p : produced)
          pending.push_back(std::move(p));
      } else {
        work_.push_back(std::move(r));
      }
    }
  }

  // -- step 3: diamonds become TOP SINCE / TOP UNTIL ------------------------

  static AtomPtr diamonds_to_su(const AtomPtr &a) {
    switch (a->kind()) {
    case AtomKind::Top:
    case AtomKind::Bottom:
    case AtomKind::Rel:
      return a;
    case AtomKind::DiamondMinus:
      return MetricAtom::since(a->rho(), MetricAtom::top(),
                               diamonds_to_su(a->rhs()));
    case AtomKind::DiamondPlus:
      return MetricAtom::until(a->rho(), MetricAtom::top(),
                               diamonds_to_su(a->rhs()));
    case AtomKind::Since:
    case AtomKind::Until:
      return MetricAtom::binary(a->kind(), a->rho(),
                                diamonds_to_su(a->lhs()),
                                diamonds_to_su(a->rhs()));
    default:
      return MetricAtom::unary(a->kind(), a->rho(), diamonds_to_su(a->rhs()));
    }
  }

  void eliminate_diamonds() {
    for (Rule &r : work_) {
      for (AtomPtr &a : r.positive)
        a = diamonds_to_su(a);
      for (AtomPtr &a : r.negative)
        a = diamonds_to_su(a);
    }
  }

  // -- step 4: unbounded intervals other than [0,inf) -----------------------

  static bool offending_unbounded(const AtomPtr &a) {
    if (a->kind() == AtomKind::Top || a->kind() == AtomKind::Bottom ||
        a->kind() == AtomKind::Rel)
      return false;
    return a->rho().hi_infinite() && a->rho().lo() != 0;
  }

  // positive occurrence of P1 S [c,inf) P2 (c >= 1): the disjunct list
  // whose union is equivalent to the atom. Each disjunct is a conjunction
  // of flat atoms safe on its own variables.
  std::vector<std::vector<AtomPtr>> unbounded_su_disjuncts(const AtomPtr &m) {
    bool is_since = m->kind() == AtomKind::Since;
    Time c = m->rho().lo();
    AtomPtr p1 = m->lhs();
    AtomPtr p2 = m->rhs();
    AtomKind box = is_since ? AtomKind::BoxMinus : AtomKind::BoxPlus;
    std::vector<std::vector<AtomPtr>> disjuncts;
    if (c == 1) {
      disjuncts.push_back({MetricAtom::unary(box, Interval::point(1), p2)});
    } else {
      disjuncts.push_back(
          {MetricAtom::unary(box, Interval::point(c), p2),
           MetricAtom::unary(box, Interval::closed(1, c - 1), p1)});
    }
    {
      // witness farther than c: bridge via P'' = P1 S[0,inf) P2 /\ P1
      std::vector<Term> terms = atom_terms(p1);
      std::vector<Term> t2 = atom_terms(p2);
      terms.insert(terms.end(), t2.begin(), t2.end());
      std::string base = operand_base(p1) + "_" + operand_base(p2);
      std::string name = fresh_name(base, "unbounded",
                                    {operand_base(p1), operand_base(p2)});
      AtomPtr fresh = MetricAtom::rel(name, terms);
      Rule define;
      define.head = fresh;
      define.positive = {
          MetricAtom::binary(m->kind(), Interval::at_least(0), p1, p2), p1};
      strip_constant_positives(define);
      done_.push_back(std::move(define));
      disjuncts.push_back(
          {MetricAtom::unary(box, Interval::point(c), fresh),
           MetricAtom::unary(box, Interval::closed(1, c), p1)});
    }
    for (auto &conj : disjuncts) {
      for (AtomPtr &a : conj)
        a = fold_constants(a);
      conj.erase(std::remove_if(conj.begin(), conj.end(),
                                [](const AtomPtr &a) {
                                  return a->kind() == AtomKind::Top;
                                }),
                 conj.end());
    }
    return disjuncts;
  }

  void eliminate_unbounded() {
    std::deque<Rule> pending = std::move(work_);
    work_.clear();
    while (!pending.empty()) {
      Rule r = std::move(pending.front());
      pending.pop_front();

      bool rewritten = false;
      // boxes first: an equivalence, valid in any polarity
      for (std::size_t pi = 0;
           !rewritten && pi < r.positive.size() + r.negative.size(); ++pi) {
        bool is_neg = pi >= r.positive.size();
        AtomPtr &slot = is_neg ? r.negative[pi - r.positive.size()]
                               : r.positive[pi];
        if (!offending_unbounded(slot) || !is_unary_op(slot->kind()))
          continue;
        Time c = slot->rho().lo();
        AtomPtr operand = slot->rhs();
        std::vector<Term> terms = atom_terms(operand);
        std::string name = fresh_name(operand_base(operand), "unbounded",
                                      {operand_base(operand)});
        AtomPtr fresh = MetricAtom::rel(name, terms);
        Rule define;  // P'(s) <- BOX[0,inf) P(s)
        define.head = fresh;
        define.positive = {
            MetricAtom::unary(slot->kind(), Interval::at_least(0), operand)};
        done_.push_back(std::move(define));
        slot = MetricAtom::unary(slot->kind(), Interval::point(c), fresh);
        pending.push_back(std::move(r));
        rewritten = true;
      }
      if (rewritten)
        continue;

      // SINCE/UNTIL with [c,inf), c >= 1: disjunctive decomposition. A
      // positive occurrence distributes over rules; a negated one needs
      // the conjunction of the negated disjuncts, via auxiliary predicates.
      for (std::size_t pi = 0;
           !rewritten && pi < r.positive.size() + r.negative.size(); ++pi) {
        bool is_neg = pi >= r.positive.size();
        std::size_t idx = is_neg ? pi - r.positive.size() : pi;
        const AtomPtr &slot = is_neg ? r.negative[idx] : r.positive[idx];
        if (!offending_unbounded(slot) || !is_binary_op(slot->kind()))
          continue;
        auto disjuncts = unbounded_su_disjuncts(slot);
        if (!is_neg) {
          for (const auto &conj : disjuncts) {
            Rule variant = r;
            variant.positive.erase(variant.positive.begin() +
                                   static_cast<std::ptrdiff_t>(idx));
            variant.positive.insert(variant.positive.end(), conj.begin(),
                                    conj.end());
            pending.push_back(std::move(variant));
          }
        } else {
          Rule variant = r;
          variant.negative.erase(variant.negative.begin() +
                                 static_cast<std::ptrdiff_t>(idx));
          for (const auto &conj : disjuncts) {
            // aux <- conj; the aux arity covers the variables the
            // disjunct actually constrains
            std::set<std::string> seen;
            std::vector<Term> terms;
            for (const auto &a : conj)
              for (const Term &t : atom_terms(a->rhs()))
                if (!t.is_var || seen.insert(t.name).second)
                  terms.push_back(t);
            std::string name = fresh_name("neg", "unbounded", {});
            AtomPtr fresh = MetricAtom::rel(name, terms);
            Rule define;
            define.head = fresh;
            define.positive = conj;
            done_.push_back(std::move(define));
            variant.negative.push_back(fresh);
          }
          pending.push_back(std::move(variant));
        }
        rewritten = true;
      }
      if (rewritten)
        continue;

      work_.push_back(std::move(r));
    }
  }

  static void strip_constant_positives(Rule &r) {
    r.positive.erase(std::remove_if(r.positive.begin(), r.positive.end(),
                                    [](const AtomPtr &a) {
                                      return a->kind() == AtomKind::Top;
                                    }),
                     r.positive.end());
  }

  std::deque<Rule> work_;
  std::deque<Rule> done_;  // definitions that need no further rewriting
  std::set<std::string> used_names_;
  std::map<std::string, FreshPredicateInfo> fresh_;
  int counter_ = 0;
};

bool flat_operand(const AtomPtr &a) {
  return a->kind() == AtomKind::Top || a->kind() == AtomKind::Bottom ||
         a->kind() == AtomKind::Rel;
}

bool normal_body_atom(const AtomPtr &a) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return true;
  case AtomKind::DiamondMinus:
  case AtomKind::DiamondPlus:
    return false;
  case AtomKind::BoxMinus:
  case AtomKind::BoxPlus:
    if (!flat_operand(a->rhs()))
      return false;
    break;
  case AtomKind::Since:
  case AtomKind::Until:
    if (!flat_operand(a->lhs()) || !flat_operand(a->rhs()))
      return false;
    break;
  }
  const Interval &rho = a->rho();
  return rho.bounded() || rho.lo() == 0;
}

} // namespace

NormalizationReport normalize(const Program &program) {
  return Rewriter(program).run();
}

bool is_normal_form(const Program &program) {
  for (const Rule &r : program.rules()) {
    if (r.head->kind() != AtomKind::Rel &&
        r.head->kind() != AtomKind::Bottom)
      return false;
    for (const auto &a : r.positive)
      if (!normal_body_atom(a))
        return false;
    for (const auto &a : r.negative)
      if (!normal_body_atom(a))
        return false;
  }
  return true;
}

} // namespace temporalis
