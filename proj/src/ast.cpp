#include "temporalis/ast.hpp"

#include <algorithm>
#include <functional>

namespace temporalis {

std::string GroundAtom::to_string() const {
  if (args.empty())
    return pred;
  std::string s = pred + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      s += ",";
    s += args[i];
  }
  return s + ")";
}

namespace {

void check_operator_interval(const Interval &rho) {
  if (!rho.nonnegative())
    throw InputError("operator interval " + rho.to_string() +
                     " mentions a negative time point");
}

const char *keyword(AtomKind k) {
  switch (k) {
  case AtomKind::DiamondMinus:
    return "DIAMONDMINUS";
  case AtomKind::DiamondPlus:
    return "DIAMONDPLUS";
  case AtomKind::BoxMinus:
    return "BOXMINUS";
  case AtomKind::BoxPlus:
    return "BOXPLUS";
  case AtomKind::Since:
    return "SINCE";
  case AtomKind::Until:
    return "UNTIL";
  default:
    return "";
  }
}

} // namespace

AtomPtr MetricAtom::top() {
  auto a = std::shared_ptr<MetricAtom>(new MetricAtom());
  a->kind_ = AtomKind::Top;
  return a;
}

AtomPtr MetricAtom::bottom() {
  auto a = std::shared_ptr<MetricAtom>(new MetricAtom());
  a->kind_ = AtomKind::Bottom;
  return a;
}

AtomPtr MetricAtom::rel(std::string pred, std::vector<Term> args) {
  auto a = std::shared_ptr<MetricAtom>(new MetricAtom());
  a->kind_ = AtomKind::Rel;
  a->pred_ = std::move(pred);
  a->args_ = std::move(args);
  return a;
}

AtomPtr MetricAtom::rel(const GroundAtom &ga) {
  std::vector<Term> args;
  args.reserve(ga.args.size());
  for (const auto &c : ga.args)
    args.push_back(Term{false, c});
  return rel(ga.pred, std::move(args));
}

AtomPtr MetricAtom::unary(AtomKind k, Interval rho, AtomPtr operand) {
  if (!is_unary_op(k))
    throw InvariantError("unary() with a non-unary kind");
  check_operator_interval(rho);
  auto a = std::shared_ptr<MetricAtom>(new MetricAtom());
  a->kind_ = k;
  a->rho_ = rho;
  a->rhs_ = std::move(operand);
  return a;
}

AtomPtr MetricAtom::binary(AtomKind k, Interval rho, AtomPtr lhs, AtomPtr rhs) {
  if (!is_binary_op(k))
    throw InvariantError("binary() with a non-binary kind");
  check_operator_interval(rho);
  auto a = std::shared_ptr<MetricAtom>(new MetricAtom());
  a->kind_ = k;
  a->rho_ = rho;
  a->lhs_ = std::move(lhs);
  a->rhs_ = std::move(rhs);
  return a;
}

bool MetricAtom::is_ground() const {
  switch (kind_) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return true;
  case AtomKind::Rel:
    return std::none_of(args_.begin(), args_.end(),
                        [](const Term &t) { return t.is_var; });
  case AtomKind::Since:
  case AtomKind::Until:
    return lhs_->is_ground() && rhs_->is_ground();
  default:
    return rhs_->is_ground();
  }
}

GroundAtom MetricAtom::ground_atom() const {
  if (kind_ != AtomKind::Rel || !is_ground())
    throw InvariantError("ground_atom() on a non-ground or compound atom");
  GroundAtom ga;
  ga.pred = pred_;
  for (const auto &t : args_)
    ga.args.push_back(t.name);
  return ga;
}

std::string MetricAtom::to_string() const {
  switch (kind_) {
  case AtomKind::Top:
    return "TOP";
  case AtomKind::Bottom:
    return "BOTTOM";
  case AtomKind::Rel: {
    if (args_.empty())
      return pred_;
    std::string s = pred_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i)
        s += ",";
      s += args_[i].name;
    }
    return s + ")";
  }
  case AtomKind::Since:
  case AtomKind::Until:
    return "(" + lhs_->to_string() + ") " + keyword(kind_) + rho_.to_string() +
           " (" + rhs_->to_string() + ")";
  default: {
    std::string operand = rhs_->to_string();
    if (is_binary_op(rhs_->kind()))
      operand = "(" + operand + ")";
    return std::string(keyword(kind_)) + rho_.to_string() + " " + operand;
  }
  }
}

int MetricAtom::compare(const MetricAtom &a, const MetricAtom &b) {
  if (a.kind_ != b.kind_)
    return a.kind_ < b.kind_ ? -1 : 1;
  switch (a.kind_) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return 0;
  case AtomKind::Rel: {
    if (a.pred_ != b.pred_)
      return a.pred_ < b.pred_ ? -1 : 1;
    if (a.args_ != b.args_)
      return a.args_ < b.args_ ? -1 : 1;
    return 0;
  }
  default: {
    if (a.rho_ != b.rho_)
      return a.rho_ < b.rho_ ? -1 : 1;
    if (is_binary_op(a.kind_)) {
      int c = compare(*a.lhs_, *b.lhs_);
      if (c)
        return c;
    }
    return compare(*a.rhs_, *b.rhs_);
  }
  }
}

bool Rule::is_ground() const {
  if (!head->is_ground())
    return false;
  for (const auto &a : positive)
    if (!a->is_ground())
      return false;
  for (const auto &a : negative)
    if (!a->is_ground())
      return false;
  return true;
}

std::string Rule::to_string() const {
  std::string s = head->to_string();
  if (!positive.empty() || !negative.empty()) {
    s += " :- ";
    bool first = true;
    for (const auto &a : positive) {
      if (!first)
        s += ", ";
      first = false;
      s += a->to_string();
    }
    for (const auto &a : negative) {
      if (!first)
        s += ", ";
      first = false;
      s += "not " + a->to_string();
    }
  }
  return s + " .";
}

bool head_grammar_ok(const AtomPtr &head) {
  switch (head->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return true;
  case AtomKind::BoxMinus:
  case AtomKind::BoxPlus:
    return head_grammar_ok(head->rhs());
  default:
    return false;
  }
}

namespace {

void collect_variables(const AtomPtr &a, bool skip_su_left,
                       std::set<std::string> &out) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return;
  case AtomKind::Rel:
    for (const auto &t : a->args())
      if (t.is_var)
        out.insert(t.name);
    return;
  case AtomKind::Since:
  case AtomKind::Until:
    if (!skip_su_left)
      collect_variables(a->lhs(), skip_su_left, out);
    collect_variables(a->rhs(), skip_su_left, out);
    return;
  default:
    collect_variables(a->rhs(), skip_su_left, out);
    return;
  }
}

void collect_constants(const AtomPtr &a, std::set<std::string> &out) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return;
  case AtomKind::Rel:
    for (const auto &t : a->args())
      if (!t.is_var)
        out.insert(t.name);
    return;
  case AtomKind::Since:
  case AtomKind::Until:
    collect_constants(a->lhs(), out);
    collect_constants(a->rhs(), out);
    return;
  default:
    collect_constants(a->rhs(), out);
    return;
  }
}

void collect_predicates(const AtomPtr &a,
                        std::map<std::string, std::size_t> &out) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return;
  case AtomKind::Rel:
    out.emplace(a->pred(), a->args().size());
    return;
  case AtomKind::Since:
  case AtomKind::Until:
    collect_predicates(a->lhs(), out);
    collect_predicates(a->rhs(), out);
    return;
  default:
    collect_predicates(a->rhs(), out);
    return;
  }
}

void collect_interval_numbers(const AtomPtr &a, std::vector<Time> &out) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return;
  case AtomKind::Since:
  case AtomKind::Until:
    out.push_back(a->rho().lo());
    if (!a->rho().hi_infinite())
      out.push_back(a->rho().hi());
    collect_interval_numbers(a->lhs(), out);
    collect_interval_numbers(a->rhs(), out);
    return;
  default:
    out.push_back(a->rho().lo());
    if (!a->rho().hi_infinite())
      out.push_back(a->rho().hi());
    collect_interval_numbers(a->rhs(), out);
    return;
  }
}

void for_each_rule_atom(const Rule &r,
                        const std::function<void(const AtomPtr &)> &f) {
  f(r.head);
  for (const auto &a : r.positive)
    f(a);
  for (const auto &a : r.negative)
    f(a);
}

} // namespace

std::optional<std::string> unsafe_variable(const Rule &rule) {
  std::set<std::string> head_vars;
  collect_variables(rule.head, false, head_vars);
  if (head_vars.empty())
    return std::nullopt;
  std::set<std::string> covered;
  for (const auto &a : rule.positive)
    collect_variables(a, /*skip_su_left=*/true, covered);
  for (const auto &v : head_vars)
    if (!covered.count(v))
      return v;
  return std::nullopt;
}

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::vector<Time> numbers;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule &r = rules_[i];
    if (!head_grammar_ok(r.head))
      throw InputError("rule #" + std::to_string(i) + ": head " +
                       r.head->to_string() +
                       " is not TOP, BOTTOM, relational, or boxes thereof");
    if (auto v = unsafe_variable(r))
      throw SafetyError(i, *v);
    for_each_rule_atom(r, [&](const AtomPtr &a) {
      collect_constants(a, constants_);
      collect_predicates(a, predicates_);
      collect_interval_numbers(a, numbers);
    });
  }
  t_pi_ = 1;
  for (Time n : numbers)
    if (is_finite(n) && n > t_pi_)
      t_pi_ = n;
}

std::string Program::to_string() const {
  std::string s;
  for (const auto &r : rules_) {
    s += r.to_string();
    s += "\n";
  }
  return s;
}

std::string Fact::to_string() const {
  return atom.to_string() + "@" + rho.to_string() + " .";
}

Dataset::Dataset(std::vector<Fact> facts) : facts_(std::move(facts)) {
  bool any = false;
  for (const auto &f : facts_) {
    for (Time n : {f.rho.lo(), f.rho.hi()}) {
      if (!is_finite(n))
        continue;
      if (!any) {
        t_min_ = t_max_ = n;
        any = true;
      } else {
        t_min_ = std::min(t_min_, n);
        t_max_ = std::max(t_max_, n);
      }
    }
  }
}

bool Dataset::bounded() const {
  return std::all_of(facts_.begin(), facts_.end(),
                     [](const Fact &f) { return f.rho.bounded(); });
}

std::set<std::string> Dataset::constants() const {
  std::set<std::string> out;
  for (const auto &f : facts_)
    for (const auto &c : f.atom.args)
      out.insert(c);
  return out;
}

std::string Dataset::to_string() const {
  std::string s;
  for (const auto &f : facts_) {
    s += f.to_string();
    s += "\n";
  }
  return s;
}

std::pair<Time, Time> data_extent(const Dataset &dataset) {
  return {dataset.t_min(), dataset.t_max()};
}

namespace {

AtomPtr substitute(const AtomPtr &a,
                   const std::map<std::string, std::string> &sigma) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return a;
  case AtomKind::Rel: {
    std::vector<Term> args;
    args.reserve(a->args().size());
    for (const auto &t : a->args()) {
      if (t.is_var) {
        auto it = sigma.find(t.name);
        if (it == sigma.end())
          throw InvariantError("substitution misses variable " + t.name);
        args.push_back(Term{false, it->second});
      } else {
        args.push_back(t);
      }
    }
    return MetricAtom::rel(a->pred(), std::move(args));
  }
  case AtomKind::Since:
  case AtomKind::Until:
    return MetricAtom::binary(a->kind(), a->rho(), substitute(a->lhs(), sigma),
                              substitute(a->rhs(), sigma));
  default:
    return MetricAtom::unary(a->kind(), a->rho(), substitute(a->rhs(), sigma));
  }
}

std::set<std::string> rule_variables(const Rule &r) {
  std::set<std::string> vars;
  collect_variables(r.head, false, vars);
  for (const auto &a : r.positive)
    collect_variables(a, false, vars);
  for (const auto &a : r.negative)
    collect_variables(a, false, vars);
  return vars;
}

} // namespace

std::vector<Rule> ground(const Program &program, const Dataset &dataset) {
  std::set<std::string> constants = program.constants();
  for (const auto &c : dataset.constants())
    constants.insert(c);
  std::vector<std::string> consts(constants.begin(), constants.end());

  std::vector<Rule> out;
  for (const Rule &r : program.rules()) {
    std::set<std::string> vars = rule_variables(r);
    if (vars.empty()) {
      out.push_back(r);
      continue;
    }
    if (consts.empty())
      continue;  // no substitutions exist
    std::vector<std::string> var_list(vars.begin(), vars.end());
    std::vector<std::size_t> choice(var_list.size(), 0);
    while (true) {
      std::map<std::string, std::string> sigma;
      for (std::size_t i = 0; i < var_list.size(); ++i)
        sigma[var_list[i]] = consts[choice[i]];
      Rule g;
      g.head = substitute(r.head, sigma);
      for (const auto &a : r.positive)
        g.positive.push_back(substitute(a, sigma));
      for (const auto &a : r.negative)
        g.negative.push_back(substitute(a, sigma));
      out.push_back(std::move(g));
      // next substitution, lexicographic
      std::size_t i = var_list.size();
      while (i > 0) {
        --i;
        if (++choice[i] < consts.size())
          break;
        choice[i] = 0;
        if (i == 0)
          goto done;
      }
      continue;
    done:
      break;
    }
  }
  return out;
}

AtomUniverse::AtomUniverse(std::vector<AtomPtr> atoms)
    : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(), AtomPtrLess{});
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end(), atom_eq),
               atoms_.end());
}

std::optional<std::size_t> AtomUniverse::index_of(const AtomPtr &a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a, AtomPtrLess{});
  if (it != atoms_.end() && atom_eq(*it, a))
    return static_cast<std::size_t>(it - atoms_.begin());
  return std::nullopt;
}

namespace {

// Every metric atom occurring in the rule, including proper subatoms but
// excluding bare TOP/BOTTOM leaves.
void collect_subatoms(const AtomPtr &a, std::vector<AtomPtr> &out) {
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
    return;
  case AtomKind::Rel:
    out.push_back(a);
    return;
  case AtomKind::Since:
  case AtomKind::Until:
    out.push_back(a);
    collect_subatoms(a->lhs(), out);
    collect_subatoms(a->rhs(), out);
    return;
  default:
    out.push_back(a);
    collect_subatoms(a->rhs(), out);
    return;
  }
}

} // namespace

AtomUniverse atom_universe(const Program &program, const Dataset &dataset) {
  std::vector<AtomPtr> atoms;
  for (const auto &f : dataset.facts())
    atoms.push_back(MetricAtom::rel(f.atom));

  std::vector<AtomPtr> relational_in_ground;
  for (const Rule &r : ground(program, dataset)) {
    std::vector<AtomPtr> sub;
    collect_subatoms(r.head, sub);
    for (const auto &a : r.positive)
      collect_subatoms(a, sub);
    for (const auto &a : r.negative)
      collect_subatoms(a, sub);
    for (auto &a : sub) {
      if (a->is_relational())
        relational_in_ground.push_back(a);
      atoms.push_back(std::move(a));
    }
  }
  Interval zero_inf = Interval::at_least(0);
  for (const auto &m : relational_in_ground) {
    atoms.push_back(MetricAtom::box_minus(zero_inf, m));
    atoms.push_back(MetricAtom::box_plus(zero_inf, m));
  }
  return AtomUniverse(std::move(atoms));
}

namespace {

bool mentions_kind(const AtomPtr &a, AtomKind k1, AtomKind k2, AtomKind k3) {
  if (a->kind() == k1 || a->kind() == k2 || a->kind() == k3)
    return true;
  switch (a->kind()) {
  case AtomKind::Top:
  case AtomKind::Bottom:
  case AtomKind::Rel:
    return false;
  case AtomKind::Since:
  case AtomKind::Until:
    return mentions_kind(a->lhs(), k1, k2, k3) ||
           mentions_kind(a->rhs(), k1, k2, k3);
  default:
    return mentions_kind(a->rhs(), k1, k2, k3);
  }
}

} // namespace

bool is_forward_propagating(const Program &program) {
  for (const Rule &r : program.rules()) {
    if (mentions_kind(r.head, AtomKind::BoxMinus, AtomKind::BoxMinus,
                      AtomKind::BoxMinus))
      return false;
    for (const auto &a : r.positive)
      if (mentions_kind(a, AtomKind::DiamondPlus, AtomKind::BoxPlus,
                        AtomKind::Until))
        return false;
    for (const auto &a : r.negative)
      if (mentions_kind(a, AtomKind::DiamondPlus, AtomKind::BoxPlus,
                        AtomKind::Until))
        return false;
  }
  return true;
}

} // namespace temporalis
