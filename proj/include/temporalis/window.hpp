#ifndef TEMPORALIS_WINDOW_HPP
#define TEMPORALIS_WINDOW_HPP

#include <cstdint>

#include "temporalis/interpretation.hpp"
#include "temporalis/semantics.hpp"

namespace temporalis {

// Compact bit matrix: (time column) x (universe atom).
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    if (v)
      w_[i >> 6] |= 1ull << (i & 63);
    else
      w_[i >> 6] &= ~(1ull << (i & 63));
  }
  bool subset_of(const Bits &o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i])
        return false;
    return true;
  }
  friend bool operator==(const Bits &a, const Bits &b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator<(const Bits &a, const Bits &b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.w_ < b.w_;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Universe atoms of a normalized program compiled for bit-level access:
// operands are universe indices or constants.
class CompiledUniverse {
public:
  static constexpr int kTop = -2;
  static constexpr int kBottom = -3;

  struct Entry {
    AtomKind kind = AtomKind::Rel;
    int lhs = kTop;  // SINCE/UNTIL left operand
    int rhs = kTop;  // operand of unary operators and SINCE/UNTIL right
    Time lo = 0;
    Time hi = 0;
    bool unbounded = false;  // rho = [0,inf)
  };

  CompiledUniverse() = default;
  explicit CompiledUniverse(AtomUniverse universe);

  const AtomUniverse &universe() const { return universe_; }
  std::size_t size() const { return entries_.size(); }
  const Entry &entry(std::size_t i) const { return entries_[i]; }
  const std::vector<std::size_t> &relational() const { return relational_; }

private:
  AtomUniverse universe_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> relational_;
};

// Ground rules compiled to universe indices. Rules that can never fire or
// are trivially satisfied are dropped or flagged.
struct CompiledRule {
  int head = CompiledUniverse::kBottom;  // universe index or kBottom
  std::vector<int> positive;             // universe indices
  std::vector<int> negative;
  bool never_fires = false;
};

std::vector<CompiledRule> compile_rules(const std::vector<Rule> &ground_rules,
                                        const CompiledUniverse &u);

// Precomputed dataset entailment over universe atoms: D |= M@t, constant
// outside the cached range.
class DatasetEntailment {
public:
  DatasetEntailment() = default;
  DatasetEntailment(const Dataset &dataset, const CompiledUniverse &u);
  bool entails(std::size_t atom, Time t) const;

private:
  Time lo_ = 0;
  Time hi_ = -1;
  std::size_t natoms_ = 0;
  std::vector<bool> grid_;  // (t - lo_) * natoms + atom
};

// Everything window validation needs about a grounded instance.
struct WindowContext {
  CompiledUniverse universe;
  std::vector<CompiledRule> rules;
  DatasetEntailment data;
  Time t_pi = 1;
  std::size_t max_enumeration_bits = 16;

  static WindowContext make(const Program &normalized_program,
                            const Dataset &dataset);
};

// A fragment of an HT-interpretation over a closed bounded interval
// [lo, lo+len]: per-layer truth bits for every universe atom at every
// column, plus the run flag b.
class Window {
public:
  Window() = default;
  Window(Time lo, int len, std::size_t natoms);

  Time lo() const { return lo_; }
  Time hi() const { return lo_ + len_; }
  int len() const { return len_; }
  std::size_t natoms() const { return natoms_; }

  bool here(std::size_t atom, Time t) const { return here_.get(index(atom, t)); }
  bool there(std::size_t atom, Time t) const {
    return there_.get(index(atom, t));
  }
  void set_here(std::size_t atom, Time t, bool v) {
    here_.set(index(atom, t), v);
  }
  void set_there(std::size_t atom, Time t, bool v) {
    there_.set(index(atom, t), v);
  }
  bool b() const { return b_; }
  void set_b(bool v) { b_ = v; }

  const Bits &here_bits() const { return here_; }
  const Bits &there_bits() const { return there_; }
  bool here_equals_there() const { return here_ == there_; }
  // (H = T and b = 0) or (H != T and b = 1)
  bool is_initial() const { return b_ == !here_equals_there(); }

  Window shifted(Time delta) const;
  std::string debug_json(const CompiledUniverse &u) const;

  friend bool operator==(const Window &a, const Window &b) {
    return a.lo_ == b.lo_ && a.len_ == b.len_ && a.b_ == b.b_ &&
           a.here_ == b.here_ && a.there_ == b.there_;
  }
  friend bool operator<(const Window &a, const Window &b);

private:
  std::size_t index(std::size_t atom, Time t) const {
    if (t < lo_ || t > lo_ + len_)
      throw InvariantError("window access outside rho");
    return static_cast<std::size_t>(t - lo_) * natoms_ + atom;
  }

  Time lo_ = 0;
  int len_ = 0;
  std::size_t natoms_ = 0;
  Bits here_;
  Bits there_;
  bool b_ = false;
};

struct WindowValidity {
  bool ok = true;
  std::string reason;
};

// Checks, per layer, the realizability constraints (exact values for
// operators whose references stay inside rho, necessary conditions at the
// edges, adjacent-column recurrences for the [0,inf) operators), H <= T,
// both local-satisfaction clauses for every rule at every column, and,
// when requested, the dataset condition D |= M@t => M@t in H.
WindowValidity validate_window(const Window &w, const WindowContext &ctx,
                               bool require_dataset);

enum class FragmentSide { Left, Right };

// The length-t_pi end fragment; b is recomputed as [restricted H != T].
Window fragment(const Window &w, FragmentSide side, Time t_pi);

// Union of overlapping windows agreeing on the overlap; per the claim it
// preserves local satisfaction. Throws InputError naming the violated
// precondition.
Window window_union(const Window &w1, const Window &w2,
                    const WindowContext &ctx);

// Shift so that rho starts at 0; the returned offset restores the original
// (w == canonical.shifted(-offset)).
std::pair<Window, Time> canonicalize(const Window &w);

// The rho-decomposition windows of an HT-interpretation for the index range
// [first, last]; b_i = 1 iff H_j != T_j for some j between 0 and i
// inclusive (either direction).
std::vector<Window> decompose(const HTInterpretation &ht, const Interval &rho,
                              Time first, Time last,
                              const CompiledUniverse &u);

// All valid assignments for the column adjacent to `w` (below lo for Left,
// above hi for Right) of the `there` layer, assuming H = T windows; used
// for letter proposals. Each result is an atom bitmask.
std::vector<std::uint64_t> feasible_adjacent_columns(const Window &w,
                                                     const WindowContext &ctx,
                                                     FragmentSide side);

} // namespace temporalis

#endif
