#ifndef TEMPORALIS_BUCHI_HPP
#define TEMPORALIS_BUCHI_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "temporalis/errors.hpp"

namespace temporalis {

// A letter is one or two machine words of payload: window automata use `a`
// as an atom bitmask, paired products put the left word in `a` and the
// right word in `b`.
struct Letter {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const Letter &x, const Letter &y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const Letter &x, const Letter &y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

struct LetterHash {
  std::size_t operator()(const Letter &l) const {
    return std::hash<std::uint64_t>()(l.a * 1000003u ^ l.b);
  }
};

// Ultimately periodic word prefix . loop^omega.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;  // nonempty
};

// Generalized nondeterministic Büchi automaton with on-demand expansion.
// States are opaque ids owned by the producing construction. `letters` must
// propose every letter that has a successor from the given state (it may
// propose more); `next` must be total over arbitrary letters.
struct Gnba {
  std::uint64_t initial = 0;
  std::size_t num_accepting_sets = 0;  // empty family: every run accepts
  std::function<std::vector<std::uint64_t>(std::uint64_t, const Letter &)>
      next;
  std::function<std::vector<Letter>(std::uint64_t)> letters;
  std::function<bool(std::uint64_t, std::size_t)> accepting;
};

struct BuchiLimits {
  std::size_t max_states = 1000000;
  std::size_t max_rank_width = 14;  // complement level-set size guard
};

// Counter construction; the result has exactly one accepting set.
Gnba degeneralize(const Gnba &a);

// Runs x on the `a` components and y on the `b` components of the letters.
Gnba pairwise_product(const Gnba &x, const Gnba &y);

// Language intersection over a shared alphabet; letters proposed by x.
Gnba intersect(const Gnba &x, const Gnba &y);

// Language union (degeneralizes both inputs).
Gnba gnba_union(const Gnba &x, const Gnba &y);

// Rank-based complementation. The input's reachable part is materialized
// first (to fix the rank bound), so the input must be finite under its own
// letter proposals. Letters of the complement are proposed by the caller's
// context, not this automaton; `letters` falls back to the input's.
Gnba complement(const Gnba &a, const BuchiLimits &limits = {});

// Merge states by a canonical key; acceptance and transitions are taken
// from the first representative seen per key.
Gnba quotient(const Gnba &a,
              std::function<std::uint64_t(std::uint64_t)> canonical_key);

// Emptiness with lasso extraction; nullopt iff the language is empty.
// Deterministic for a fixed proposal order.
std::optional<LassoWord> is_empty(const Gnba &a,
                                  const BuchiLimits &limits = {});

// Membership of an ultimately periodic word.
bool accepts_lasso(const Gnba &a, const LassoWord &w,
                   const BuchiLimits &limits = {});

// Graphviz dump of the explored state graph, for diagnostics.
std::string dot_export(const Gnba &a, std::size_t max_states = 200);

} // namespace temporalis

#endif
