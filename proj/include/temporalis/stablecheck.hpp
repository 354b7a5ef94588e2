#ifndef TEMPORALIS_STABLECHECK_HPP
#define TEMPORALIS_STABLECHECK_HPP

#include <map>
#include <memory>

#include "temporalis/buchi.hpp"
#include "temporalis/normalize.hpp"
#include "temporalis/window.hpp"

namespace temporalis {

enum class AutomatonKind { A, B, C, F };
enum class Direction { Left, Right };

struct WindowAutomatonSpec {
  AutomatonKind kind = AutomatonKind::A;
  Direction direction = Direction::Left;
  Window initial;
  std::shared_ptr<const WindowContext> ctx;
  // Restrict letters and state content to this atom set (bitmask over the
  // universe); used for the program-vocabulary-only left checks.
  std::uint64_t allowed_mask = ~0ull;
  // Keep absolute time offsets in state identity instead of canonicalizing
  // (the F automaton needs this until past the data; emptiness then runs on
  // its shift quotient).
  bool absolute_positions = false;
};

// A window automaton together with access to its state payloads.
struct WindowAutomaton {
  Gnba gnba;
  // the window a state id stands for
  std::function<Window(std::uint64_t)> window_of;
  // id of the state's shift-canonical content, for the generic quotient
  std::function<std::uint64_t(std::uint64_t)> canonical_key;
};

WindowAutomaton build_window_automaton_full(const WindowAutomatonSpec &spec,
                                            const BuchiLimits &limits = {});

// States are windows of the initial window's length; letters are universe
// atom bitmasks in Letter::a. Unless absolute_positions is set, states are
// canonicalized so the automaton is the quotient under time shifts.
Gnba build_window_automaton(const WindowAutomatonSpec &spec,
                            const BuchiLimits &limits = {});

enum class InitialMode { General, Fp };

struct StableWitness {
  Window initial_window;
  LassoWord left;
  LassoWord right;
  bool exact_tails = true;  // both loops are relationally constant
};

struct Triple {
  Window left;
  Window right;
  bool b = false;

  friend bool operator<(const Triple &x, const Triple &y) {
    if (x.b != y.b)
      return x.b < y.b;
    if (!(x.left == y.left))
      return x.left < y.left;
    return x.right < y.right;
  }
  friend bool operator==(const Triple &x, const Triple &y) {
    return x.b == y.b && x.left == y.left && x.right == y.right;
  }
};

struct StableCheckLimits {
  std::size_t max_states = 1000000;
  std::size_t max_candidates = 100000;
  std::size_t max_rank_width = 14;
};

class StableChecker {
public:
  StableChecker(const Program &normalized_program, const Dataset &dataset,
                StableCheckLimits limits = {});

  const WindowContext &context() const { return *ctx_; }
  std::shared_ptr<const WindowContext> context_ptr() const { return ctx_; }
  Interval rho_general() const;  // [t_min, t_max + t_pi]
  Interval rho_fp() const;       // [t_min - (t_pi+1), t_min - 1]

  std::vector<Window> enumerate_initial_windows(InitialMode mode) const;

  // Windows (rho0, H0, T0, [H0 != T0]) sharing T0 with `t0`, locally
  // satisfying the program, with H0 satisfying the dataset (pointwise in
  // general mode, via local satisfaction in fp mode).
  std::vector<Window> competitor_windows(const Window &t0,
                                         InitialMode mode) const;

  // Fragment triples of competitor windows; without a fixed T0 the union
  // over all valid initial T0 windows.
  std::vector<Triple> triple_set() const;
  std::vector<Triple> triple_set(const Window &t0) const;

  std::optional<StableWitness> has_stable_model_general() const;
  std::optional<StableWitness> has_stable_model_fp() const;

  Interpretation witness_to_interpretation(const StableWitness &w,
                                           const Interval &horizon) const;
  // Replays the witness over the default validation horizon
  // [t_min - 3 t_pi, t_max + 3 t_pi] and runs the semantic oracle's
  // single-candidate check on it.
  bool validate_witness(const StableWitness &w) const;
  Interval validation_horizon() const;

  std::uint64_t pi_vocabulary() const { return pi_vocab_mask_; }

private:
  std::optional<LassoWord> left_word_fp(const Window &w0) const;
  std::optional<LassoWord> right_word_fp(const Window &w0) const;

  Program program_;
  Dataset dataset_;
  std::shared_ptr<const WindowContext> ctx_;
  StableCheckLimits limits_;
  std::uint64_t pi_vocab_mask_ = 0;
  // fp left checks are dataset independent; keyed by the canonical window
  mutable std::map<Window, std::optional<LassoWord>> fp_left_cache_;
};

// Convenience wrappers; the program must be in normal form.
std::optional<StableWitness> has_stable_model_general(
    const Program &program, const Dataset &dataset,
    StableCheckLimits limits = {});
std::optional<StableWitness> has_stable_model_fp(const Program &program,
                                                 const Dataset &dataset,
                                                 StableCheckLimits limits = {});

} // namespace temporalis

#endif
