#ifndef TEMPORALIS_AST_HPP
#define TEMPORALIS_AST_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "temporalis/interval.hpp"

namespace temporalis {

// A term is a constant or a variable. Variables start with an uppercase
// letter only in *argument* position of the text grammar; here the flag is
// explicit.
struct Term {
  bool is_var = false;
  std::string name;

  friend bool operator==(const Term &a, const Term &b) {
    return a.is_var == b.is_var && a.name == b.name;
  }
  friend bool operator<(const Term &a, const Term &b) {
    if (a.is_var != b.is_var)
      return a.is_var < b.is_var;
    return a.name < b.name;
  }
};

// Ground relational atom, the key type of interpretations.
struct GroundAtom {
  std::string pred;
  std::vector<std::string> args;

  std::string to_string() const;

  friend bool operator==(const GroundAtom &a, const GroundAtom &b) {
    return a.pred == b.pred && a.args == b.args;
  }
  friend bool operator<(const GroundAtom &a, const GroundAtom &b) {
    if (a.pred != b.pred)
      return a.pred < b.pred;
    return a.args < b.args;
  }
};

enum class AtomKind {
  Top,
  Bottom,
  Rel,
  DiamondMinus,
  DiamondPlus,
  BoxMinus,
  BoxPlus,
  Since,
  Until,
};

inline bool is_unary_op(AtomKind k) {
  return k == AtomKind::DiamondMinus || k == AtomKind::DiamondPlus ||
         k == AtomKind::BoxMinus || k == AtomKind::BoxPlus;
}
inline bool is_binary_op(AtomKind k) {
  return k == AtomKind::Since || k == AtomKind::Until;
}

class MetricAtom;
using AtomPtr = std::shared_ptr<const MetricAtom>;

// Immutable metric atom tree. Operator intervals are validated to be
// non-empty and non-negative at construction.
class MetricAtom {
public:
  static AtomPtr top();
  static AtomPtr bottom();
  static AtomPtr rel(std::string pred, std::vector<Term> args = {});
  static AtomPtr rel(const GroundAtom &ga);
  static AtomPtr unary(AtomKind k, Interval rho, AtomPtr operand);
  static AtomPtr binary(AtomKind k, Interval rho, AtomPtr lhs, AtomPtr rhs);

  static AtomPtr diamond_minus(Interval rho, AtomPtr a) {
    return unary(AtomKind::DiamondMinus, rho, std::move(a));
  }
  static AtomPtr diamond_plus(Interval rho, AtomPtr a) {
    return unary(AtomKind::DiamondPlus, rho, std::move(a));
  }
  static AtomPtr box_minus(Interval rho, AtomPtr a) {
    return unary(AtomKind::BoxMinus, rho, std::move(a));
  }
  static AtomPtr box_plus(Interval rho, AtomPtr a) {
    return unary(AtomKind::BoxPlus, rho, std::move(a));
  }
  static AtomPtr since(Interval rho, AtomPtr l, AtomPtr r) {
    return binary(AtomKind::Since, rho, std::move(l), std::move(r));
  }
  static AtomPtr until(Interval rho, AtomPtr l, AtomPtr r) {
    return binary(AtomKind::Until, rho, std::move(l), std::move(r));
  }

  AtomKind kind() const { return kind_; }
  const std::string &pred() const { return pred_; }
  const std::vector<Term> &args() const { return args_; }
  const Interval &rho() const { return rho_; }
  const AtomPtr &lhs() const { return lhs_; }  // Since/Until left operand
  const AtomPtr &rhs() const { return rhs_; }  // operand of unary ops too

  bool is_ground() const;
  bool is_relational() const { return kind_ == AtomKind::Rel; }
  GroundAtom ground_atom() const;  // requires Rel and ground

  // Text in the concrete grammar, e.g. "DIAMONDMINUS[1,1] P".
  std::string to_string() const;

  static int compare(const MetricAtom &a, const MetricAtom &b);

private:
  MetricAtom() : rho_(Interval::point(0)) {}

  AtomKind kind_ = AtomKind::Top;
  std::string pred_;
  std::vector<Term> args_;
  Interval rho_;
  AtomPtr lhs_;
  AtomPtr rhs_;
};

inline bool atom_eq(const AtomPtr &a, const AtomPtr &b) {
  return MetricAtom::compare(*a, *b) == 0;
}
struct AtomPtrLess {
  bool operator()(const AtomPtr &a, const AtomPtr &b) const {
    return MetricAtom::compare(*a, *b) < 0;
  }
};

struct Rule {
  AtomPtr head;
  std::vector<AtomPtr> positive;
  std::vector<AtomPtr> negative;

  bool is_ground() const;
  bool is_positive() const { return negative.empty(); }
  std::string to_string() const;
};

// Head grammar of rules: TOP | BOTTOM | Rel | boxes over the same grammar.
bool head_grammar_ok(const AtomPtr &head);

// A rule is safe if every head variable occurs in some positive body atom at
// a position other than the left operand of SINCE/UNTIL. Returns an
// offending variable if unsafe.
std::optional<std::string> unsafe_variable(const Rule &rule);

class Program {
public:
  Program() = default;
  // Validates head grammar and safety of every rule; throws InputError /
  // SafetyError with the rule index.
  explicit Program(std::vector<Rule> rules);

  const std::vector<Rule> &rules() const { return rules_; }
  const std::set<std::string> &constants() const { return constants_; }
  // predicate name -> arity
  const std::map<std::string, std::size_t> &predicates() const {
    return predicates_;
  }
  // Largest positive integer mentioned in any rule interval; 1 if none.
  Time t_pi() const { return t_pi_; }

  std::string to_string() const;

private:
  std::vector<Rule> rules_;
  std::set<std::string> constants_;
  std::map<std::string, std::size_t> predicates_;
  Time t_pi_ = 1;
};

struct Fact {
  GroundAtom atom;
  Interval rho = Interval::point(0);

  std::string to_string() const;
  friend bool operator==(const Fact &a, const Fact &b) {
    return a.atom == b.atom && a.rho == b.rho;
  }
};

class Dataset {
public:
  Dataset() = default;
  explicit Dataset(std::vector<Fact> facts);

  const std::vector<Fact> &facts() const { return facts_; }
  Time t_min() const { return t_min_; }
  Time t_max() const { return t_max_; }
  bool bounded() const;
  std::set<std::string> constants() const;

  std::string to_string() const;

private:
  std::vector<Fact> facts_;
  Time t_min_ = 0;
  Time t_max_ = 0;
};

// Smallest/largest numbers mentioned in the dataset; (0,0) when none.
std::pair<Time, Time> data_extent(const Dataset &dataset);

// All ground instances of the program's rules over the constants of the
// program and the dataset, in rule order then lexicographic substitution
// order. Propositional rules pass through unchanged.
std::vector<Rule> ground(const Program &program, const Dataset &dataset);

// The ordered atom universe: relational atoms of the dataset, metric atoms
// (including proper subatoms, excluding bare TOP/BOTTOM) of the grounding,
// and BOXMINUS[0,inf)/BOXPLUS[0,inf) closures of the grounding's relational
// atoms.
class AtomUniverse {
public:
  AtomUniverse() = default;
  explicit AtomUniverse(std::vector<AtomPtr> atoms);

  const std::vector<AtomPtr> &atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const AtomPtr &at(std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> index_of(const AtomPtr &a) const;

private:
  std::vector<AtomPtr> atoms_;  // sorted by MetricAtom::compare
};

AtomUniverse atom_universe(const Program &program, const Dataset &dataset);

// True iff no body atom mentions DIAMONDPLUS/BOXPLUS/UNTIL at any depth and
// no head mentions BOXMINUS at any depth.
bool is_forward_propagating(const Program &program);

} // namespace temporalis

#endif
