#include "temporalis/stablecheck.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace temporalis {

namespace {

struct WindowTable {
  std::map<Window, std::uint64_t> ids;
  std::vector<Window> values;

  std::uint64_t intern(const Window &w, std::size_t guard) {
    auto it = ids.find(w);
    if (it != ids.end())
      return it->second;
    std::uint64_t id = values.size();
    if (id >= guard)
      throw GuardError("window automaton exceeded the state guard");
    ids.emplace(w, id);
    values.push_back(w);
    return id;
  }
};

struct AcceptanceSet {
  enum Shape { BoxH, BoxT, SinceH, SinceT, FlagB } shape = FlagB;
  std::size_t atom = 0;
};

struct WindowAutomatonImpl {
  WindowAutomatonSpec spec;
  BuchiLimits limits;
  std::shared_ptr<WindowTable> table = std::make_shared<WindowTable>();
  std::shared_ptr<WindowTable> canon_table = std::make_shared<WindowTable>();
  std::vector<AcceptanceSet> families;

  FragmentSide side() const {
    return spec.direction == Direction::Left ? FragmentSide::Left
                                             : FragmentSide::Right;
  }

  Window normalize_state(const Window &w) const {
    return spec.absolute_positions ? w : canonicalize(w).first;
  }

  bool state_ok(const Window &w) const {
    const WindowContext &ctx = *spec.ctx;
    bool with_data = spec.kind == AutomatonKind::F;
    if ((spec.kind == AutomatonKind::B || spec.kind == AutomatonKind::F) &&
        !w.here_equals_there())
      return false;
    if (spec.allowed_mask != ~0ull) {
      for (Time t = w.lo(); t <= w.hi(); ++t)
        for (std::size_t m = 0; m < w.natoms(); ++m)
          if (w.there(m, t) && !((spec.allowed_mask >> m) & 1))
            return false;
    }
    return validate_window(w, ctx, with_data).ok;
  }

  // The F transition restriction: a move to (rho', T', T', 0) is blocked if
  // some window (rho', H, T', 1), locally satisfying the program and the
  // dataset, agrees with T' except at the last column, where H misses at
  // least one relational atom.
  bool f_transition_blocked(const Window &succ) const {
    const WindowContext &ctx = *spec.ctx;
    Time edge = succ.hi();
    std::uint64_t full = 0;
    for (std::size_t m = 0; m < succ.natoms(); ++m)
      if (succ.there(m, edge))
        full |= 1ull << m;
    std::uint64_t rel_mask = 0;
    for (std::size_t m : ctx.universe.relational())
      rel_mask |= 1ull << m;
    if (full == 0)
      return false;
    for (std::uint64_t h = (full - 1) & full;; h = (h - 1) & full) {
      if ((full & ~h) & rel_mask) {
        Window cand = succ;
        for (std::size_t m = 0; m < succ.natoms(); ++m)
          cand.set_here(m, edge, (h >> m) & 1);
        cand.set_b(true);
        if (validate_window(cand, ctx, true).ok)
          return true;
      }
      if (h == 0)
        break;
    }
    return false;
  }

  std::vector<std::uint64_t> next(std::uint64_t s, const Letter &l) {
    if (l.a & ~spec.allowed_mask)
      return {};
    const Window &w = table->values.at(s);
    std::size_t n = w.natoms();
    if (n < 64 && (l.a >> n))
      return {};  // letter mentions atoms outside the universe
    bool left = spec.direction == Direction::Left;
    Time new_lo = left ? w.lo() - 1 : w.lo() + 1;
    Time new_col = left ? w.lo() - 1 : w.hi() + 1;
    Window base(new_lo, w.len(), n);
    for (Time t = new_lo; t <= base.hi(); ++t) {
      if (t == new_col)
        continue;
      for (std::size_t m = 0; m < n; ++m) {
        base.set_here(m, t, w.here(m, t));
        base.set_there(m, t, w.there(m, t));
      }
    }
    for (std::size_t m = 0; m < n; ++m)
      base.set_there(m, new_col, (l.a >> m) & 1);

    std::vector<std::uint64_t> out;
    auto push_candidate = [&](Window cand) {
      cand.set_b(w.b() || !cand.here_equals_there());
      if (!state_ok(cand))
        return;
      if (spec.kind == AutomatonKind::F && f_transition_blocked(cand))
        return;
      out.push_back(table->intern(normalize_state(cand), limits.max_states));
    };
    if (spec.kind == AutomatonKind::B || spec.kind == AutomatonKind::F) {
      Window cand = base;
      for (std::size_t m = 0; m < n; ++m)
        cand.set_here(m, new_col, (l.a >> m) & 1);
      push_candidate(std::move(cand));
    } else {
      // H' on the new column: any subset of the letter
      std::uint64_t sigma = l.a;
      std::uint64_t h = sigma;
      while (true) {
        Window cand = base;
        for (std::size_t m = 0; m < n; ++m)
          cand.set_here(m, new_col, (h >> m) & 1);
        push_candidate(std::move(cand));
        if (h == 0)
          break;
        h = (h - 1) & sigma;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Letter> letters(std::uint64_t s) {
    const Window &w = table->values.at(s);
    std::vector<Letter> out;
    for (std::uint64_t mask :
         feasible_adjacent_columns(w, *spec.ctx, side())) {
      if (mask & ~spec.allowed_mask)
        continue;
      out.push_back(Letter{mask, 0});
    }
    return out;
  }

  bool accepting(std::uint64_t s, std::size_t i) const {
    const Window &w = table->values.at(s);
    const AcceptanceSet &f = families.at(i);
    const CompiledUniverse &u = spec.ctx->universe;
    auto value = [&](int idx, Time t, bool use_here) {
      if (idx == CompiledUniverse::kTop)
        return true;
      if (idx == CompiledUniverse::kBottom)
        return false;
      return use_here ? w.here(static_cast<std::size_t>(idx), t)
                      : w.there(static_cast<std::size_t>(idx), t);
    };
    switch (f.shape) {
    case AcceptanceSet::FlagB:
      return w.b();
    case AcceptanceSet::BoxH:
    case AcceptanceSet::BoxT: {
      bool use_here = f.shape == AcceptanceSet::BoxH;
      const auto &e = u.entry(f.atom);
      for (Time t = w.lo(); t <= w.hi(); ++t) {
        bool box = use_here ? w.here(f.atom, t) : w.there(f.atom, t);
        if (box || !value(e.rhs, t, use_here))
          return true;
      }
      return false;
    }
    case AcceptanceSet::SinceH:
    case AcceptanceSet::SinceT: {
      bool use_here = f.shape == AcceptanceSet::SinceH;
      const auto &e = u.entry(f.atom);
      for (Time t = w.lo(); t <= w.hi(); ++t) {
        bool su = use_here ? w.here(f.atom, t) : w.there(f.atom, t);
        if (!su || value(e.rhs, t, use_here))
          return true;
      }
      return false;
    }
    }
    return false;
  }
};

} // namespace

WindowAutomaton build_window_automaton_full(const WindowAutomatonSpec &spec,
                                            const BuchiLimits &limits) {
  if (!spec.ctx)
    throw InvariantError("window automaton spec without a context");
  const WindowContext &ctx = *spec.ctx;
  if (ctx.universe.size() > 63)
    throw GuardError("atom universe too large for letter masks");
  if (spec.kind == AutomatonKind::F && spec.direction != Direction::Right)
    throw InputError("the F automaton is right-moving only");

  auto impl = std::make_shared<WindowAutomatonImpl>();
  impl->spec = spec;
  impl->limits = limits;
  if (!spec.initial.is_initial())
    throw InputError(
        "window automaton: initial window has an inconsistent flag");
  if ((spec.kind == AutomatonKind::B || spec.kind == AutomatonKind::F) &&
      (!spec.initial.here_equals_there() || spec.initial.b()))
    throw InputError("B/F automata require an initial window with H = T "
                     "and b = 0");
  if (!impl->state_ok(spec.initial))
    throw InputError(
        "window automaton: initial window is not a valid state");

  bool left = spec.direction == Direction::Left;
  for (std::size_t m = 0; m < ctx.universe.size(); ++m) {
    const auto &e = ctx.universe.entry(m);
    if (!e.unbounded)
      continue;
    bool box = (left && e.kind == AtomKind::BoxMinus) ||
               (!left && e.kind == AtomKind::BoxPlus);
    bool su = (left && e.kind == AtomKind::Since) ||
              (!left && e.kind == AtomKind::Until);
    if (box) {
      impl->families.push_back({AcceptanceSet::BoxH, m});
      impl->families.push_back({AcceptanceSet::BoxT, m});
    } else if (su) {
      impl->families.push_back({AcceptanceSet::SinceH, m});
      impl->families.push_back({AcceptanceSet::SinceT, m});
    }
  }
  if (spec.kind == AutomatonKind::C)
    impl->families.push_back({AcceptanceSet::FlagB, 0});

  WindowAutomaton out;
  out.gnba.initial = impl->table->intern(impl->normalize_state(spec.initial),
                                         limits.max_states);
  out.gnba.num_accepting_sets = impl->families.size();
  out.gnba.next = [impl](std::uint64_t s, const Letter &l) {
    return impl->next(s, l);
  };
  out.gnba.letters = [impl](std::uint64_t s) { return impl->letters(s); };
  out.gnba.accepting = [impl](std::uint64_t s, std::size_t i) {
    return impl->accepting(s, i);
  };
  out.window_of = [impl](std::uint64_t s) { return impl->table->values.at(s); };
  out.canonical_key = [impl](std::uint64_t s) {
    const Window &w = impl->table->values.at(s);
    return impl->canon_table->intern(canonicalize(w).first,
                                     impl->limits.max_states);
  };
  return out;
}

Gnba build_window_automaton(const WindowAutomatonSpec &spec,
                            const BuchiLimits &limits) {
  return build_window_automaton_full(spec, limits).gnba;
}

// -- stable checker ------------------------------------------------------

namespace {

std::uint64_t pi_vocabulary_mask(const Program &program,
                                 const CompiledUniverse &u) {
  std::set<std::string> preds;
  for (const auto &[p, arity] : program.predicates())
    preds.insert(p);
  const std::set<std::string> &consts = program.constants();
  std::function<bool(const AtomPtr &)> ok = [&](const AtomPtr &a) -> bool {
    switch (a->kind()) {
    case AtomKind::Top:
    case AtomKind::Bottom:
      return true;
    case AtomKind::Rel: {
      if (!preds.count(a->pred()))
        return false;
      for (const Term &t : a->args())
        if (!t.is_var && !consts.count(t.name))
          return false;
      return true;
    }
    case AtomKind::Since:
    case AtomKind::Until:
      return ok(a->lhs()) && ok(a->rhs());
    default:
      return ok(a->rhs());
    }
  };
  std::uint64_t mask = 0;
  for (std::size_t m = 0; m < u.size(); ++m)
    if (ok(u.universe().at(m)))
      mask |= 1ull << m;
  return mask;
}

} // namespace

StableChecker::StableChecker(const Program &normalized_program,
                             const Dataset &dataset, StableCheckLimits limits)
    : program_(normalized_program), dataset_(dataset), limits_(limits) {
  if (!is_normal_form(program_))
    throw InputError("stable checking requires a normalized program");
  if (!dataset_.bounded())
    throw InputError("stable checking requires a bounded dataset (every "
                     "fact interval must have finite endpoints)");
  ctx_ = std::make_shared<WindowContext>(
      WindowContext::make(program_, dataset_));
  pi_vocab_mask_ = pi_vocabulary_mask(program_, ctx_->universe);
}

Interval StableChecker::rho_general() const {
  auto [lo, hi] = data_extent(dataset_);
  return Interval::closed(lo, hi + ctx_->t_pi);
}

Interval StableChecker::rho_fp() const {
  auto [lo, hi] = data_extent(dataset_);
  (void)hi;
  return Interval::closed(lo - ctx_->t_pi - 1, lo - 1);
}

Interval StableChecker::validation_horizon() const {
  auto [lo, hi] = data_extent(dataset_);
  return Interval::closed(lo - 3 * ctx_->t_pi, hi + 3 * ctx_->t_pi);
}

namespace {

// Column-by-column enumeration of windows, leftmost column first. When
// `fixed_t` is set, the here layer is enumerated below it; otherwise H = T.
struct ColumnDfs {
  const WindowContext &ctx;
  Time lo = 0;
  int len = 0;
  std::uint64_t allowed = ~0ull;
  std::vector<std::uint64_t> forced;  // per column, must-be-true bits
  const Window *fixed_t = nullptr;
  bool require_dataset = false;
  std::size_t max_candidates = 100000;

  std::vector<Window> run() {
    std::size_t n = ctx.universe.size();
    if (n > ctx.max_enumeration_bits)
      throw GuardError("universe of " + std::to_string(n) +
                       " atoms is too large for window enumeration");
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(len) + 1, 0);
    std::vector<Window> out;
    std::size_t visited = 0;
    dfs(cols, 0, out, visited);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::uint64_t t_column(Time t) const {
    std::uint64_t mask = 0;
    for (std::size_t m = 0; m < fixed_t->natoms(); ++m)
      if (fixed_t->there(m, t))
        mask |= 1ull << m;
    return mask;
  }

  bool rules_ok(std::uint64_t layer, Time t) const {
    std::uint64_t tlayer = fixed_t ? t_column(t) : layer;
    for (const CompiledRule &r : ctx.rules) {
      if (r.never_fires)
        continue;
      bool fires = true;
      for (int m : r.negative)
        if ((tlayer >> m) & 1) {
          fires = false;
          break;
        }
      if (fires)
        for (int m : r.positive)
          if (!((layer >> m) & 1)) {
            fires = false;
            break;
          }
      if (fires && (r.head == CompiledUniverse::kBottom ||
                    !((layer >> static_cast<std::size_t>(r.head)) & 1)))
        return false;
    }
    return true;
  }

  bool column_pair_ok(std::uint64_t prev, std::uint64_t cur) const {
    auto val = [](std::uint64_t col, int idx) {
      if (idx == CompiledUniverse::kTop)
        return true;
      if (idx == CompiledUniverse::kBottom)
        return false;
      return ((col >> idx) & 1) != 0;
    };
    for (std::size_t m = 0; m < ctx.universe.size(); ++m) {
      const auto &e = ctx.universe.entry(m);
      if (!e.unbounded)
        continue;
      bool xe = (prev >> m) & 1;
      bool xf = (cur >> m) & 1;
      switch (e.kind) {
      case AtomKind::BoxMinus:
        if (xf != (xe && val(cur, e.rhs)))
          return false;
        break;
      case AtomKind::BoxPlus:
        if (xe != (val(prev, e.rhs) && xf))
          return false;
        break;
      case AtomKind::Since:
        if (xf != (val(cur, e.rhs) || val(prev, e.rhs) ||
                   (xe && val(prev, e.lhs))))
          return false;
        break;
      case AtomKind::Until:
        if (xe != (val(prev, e.rhs) || val(cur, e.rhs) ||
                   (xf && val(cur, e.lhs))))
          return false;
        break;
      default:
        break;
      }
    }
    return true;
  }

  void dfs(std::vector<std::uint64_t> &cols, int c, std::vector<Window> &out,
           std::size_t &visited) const {
    std::size_t n = ctx.universe.size();
    if (c > len) {
      if (++visited > max_candidates)
        throw GuardError(
            "window enumeration exceeded the candidate guard");
      Window w(lo, len, n);
      for (int i = 0; i <= len; ++i)
        for (std::size_t m = 0; m < n; ++m) {
          bool v = (cols[static_cast<std::size_t>(i)] >> m) & 1;
          w.set_here(m, lo + i, v);
          w.set_there(m, lo + i,
                      fixed_t ? fixed_t->there(m, lo + i) : v);
        }
      w.set_b(!w.here_equals_there());
      if (validate_window(w, ctx, require_dataset).ok)
        out.push_back(std::move(w));
      return;
    }
    Time t = lo + c;
    std::uint64_t need = forced[static_cast<std::size_t>(c)];
    std::uint64_t ceiling =
        (fixed_t ? t_column(t) : ((n < 64 ? (1ull << n) : ~0ull) - 1)) &
        allowed;
    if ((need & ceiling) != need)
      return;
    std::uint64_t free = ceiling & ~need;
    std::uint64_t sub = free;
    while (true) {
      std::uint64_t mask = sub | need;
      cols[static_cast<std::size_t>(c)] = mask;
      bool ok = rules_ok(mask, t);
      if (ok && c > 0)
        ok = column_pair_ok(cols[static_cast<std::size_t>(c - 1)], mask);
      if (ok)
        dfs(cols, c + 1, out, visited);
      if (sub == 0)
        break;
      sub = (sub - 1) & free;
    }
  }
};

LassoWord project_lasso(const LassoWord &paired, bool left) {
  LassoWord out;
  for (const Letter &l : paired.prefix)
    out.prefix.push_back(Letter{left ? l.a : l.b, 0});
  for (const Letter &l : paired.loop)
    out.loop.push_back(Letter{left ? l.a : l.b, 0});
  return out;
}

bool relationally_constant(const LassoWord &w, std::uint64_t rel_mask) {
  if (w.loop.empty())
    return true;
  std::uint64_t first = w.loop.front().a & rel_mask;
  for (const Letter &l : w.loop)
    if ((l.a & rel_mask) != first)
      return false;
  return true;
}

} // namespace

std::vector<Window> StableChecker::enumerate_initial_windows(
    InitialMode mode) const {
  Interval rho = mode == InitialMode::General ? rho_general() : rho_fp();
  ColumnDfs dfs{*ctx_};
  dfs.lo = rho.lo();
  dfs.len = static_cast<int>(rho.length());
  dfs.max_candidates = limits_.max_candidates;
  dfs.forced.assign(static_cast<std::size_t>(dfs.len) + 1, 0);
  if (mode == InitialMode::General) {
    // T0 |= D: every dataset fact point is present
    for (const Fact &f : dataset_.facts()) {
      auto idx = ctx_->universe.universe().index_of(MetricAtom::rel(f.atom));
      if (!idx)
        throw InvariantError("dataset atom missing from the universe");
      for (Time t = std::max(f.rho.lo(), rho.lo());
           t <= std::min(f.rho.hi(), rho.hi()); ++t)
        dfs.forced[static_cast<std::size_t>(t - rho.lo())] |= 1ull << *idx;
    }
  } else {
    dfs.allowed = pi_vocab_mask_;
    dfs.require_dataset = true;
    for (Time t = rho.lo(); t <= rho.hi(); ++t)
      for (std::size_t m = 0; m < ctx_->universe.size(); ++m)
        if (ctx_->data.entails(m, t))
          dfs.forced[static_cast<std::size_t>(t - rho.lo())] |= 1ull << m;
  }
  return dfs.run();
}

std::vector<Window> StableChecker::competitor_windows(
    const Window &t0, InitialMode mode) const {
  ColumnDfs dfs{*ctx_};
  dfs.lo = t0.lo();
  dfs.len = t0.len();
  dfs.fixed_t = &t0;
  dfs.max_candidates = limits_.max_candidates;
  dfs.require_dataset = mode == InitialMode::Fp;
  dfs.forced.assign(static_cast<std::size_t>(dfs.len) + 1, 0);
  if (mode == InitialMode::General) {
    for (const Fact &f : dataset_.facts()) {
      auto idx = ctx_->universe.universe().index_of(MetricAtom::rel(f.atom));
      if (!idx)
        throw InvariantError("dataset atom missing from the universe");
      for (Time t = std::max(f.rho.lo(), t0.lo());
           t <= std::min(f.rho.hi(), t0.hi()); ++t)
        dfs.forced[static_cast<std::size_t>(t - t0.lo())] |= 1ull << *idx;
    }
  } else {
    for (Time t = t0.lo(); t <= t0.hi(); ++t)
      for (std::size_t m = 0; m < ctx_->universe.size(); ++m)
        if (ctx_->data.entails(m, t))
          dfs.forced[static_cast<std::size_t>(t - t0.lo())] |= 1ull << m;
  }
  return dfs.run();
}

std::vector<Triple> StableChecker::triple_set(const Window &t0) const {
  std::vector<Triple> out;
  for (const Window &w : competitor_windows(t0, InitialMode::General)) {
    Triple tr;
    tr.left = fragment(w, FragmentSide::Left, ctx_->t_pi);
    tr.right = fragment(w, FragmentSide::Right, ctx_->t_pi);
    tr.b = !w.here_equals_there();
    out.push_back(std::move(tr));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> StableChecker::triple_set() const {
  std::vector<Triple> out;
  for (const Window &t0 : enumerate_initial_windows(InitialMode::General)) {
    auto part = triple_set(t0);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<StableWitness> StableChecker::has_stable_model_general() const {
  BuchiLimits bl{limits_.max_states, limits_.max_rank_width};
  for (const Window &w0 : enumerate_initial_windows(InitialMode::General)) {
    auto make = [&](AutomatonKind kind, Direction dir, const Window &init) {
      WindowAutomatonSpec s;
      s.ctx = ctx_;
      s.kind = kind;
      s.direction = dir;
      s.initial = init;
      return build_window_automaton(s, bl);
    };
    Gnba checker = pairwise_product(
        make(AutomatonKind::B, Direction::Left,
             fragment(w0, FragmentSide::Left, ctx_->t_pi)),
        make(AutomatonKind::B, Direction::Right,
             fragment(w0, FragmentSide::Right, ctx_->t_pi)));

    for (const Triple &tr : triple_set(w0)) {
      Gnba competitor;
      if (tr.b) {
        competitor = pairwise_product(
            make(AutomatonKind::A, Direction::Left, tr.left),
            make(AutomatonKind::A, Direction::Right, tr.right));
      } else {
        competitor = gnba_union(
            pairwise_product(
                make(AutomatonKind::C, Direction::Left, tr.left),
                make(AutomatonKind::A, Direction::Right, tr.right)),
            pairwise_product(
                make(AutomatonKind::A, Direction::Left, tr.left),
                make(AutomatonKind::C, Direction::Right, tr.right)));
      }
      checker = intersect(checker, complement(competitor, bl));
    }
    if (auto lasso = is_empty(checker, bl)) {
      StableWitness w;
      w.initial_window = w0;
      w.left = project_lasso(*lasso, true);
      w.right = project_lasso(*lasso, false);
      std::uint64_t rel_mask = 0;
      for (std::size_t m : ctx_->universe.relational())
        rel_mask |= 1ull << m;
      w.exact_tails = relationally_constant(w.left, rel_mask) &&
                      relationally_constant(w.right, rel_mask);
      if (!validate_witness(w))
        throw InvariantError("general checker produced a witness that "
                             "fails the semantic oracle");
      return w;
    }
  }
  return std::nullopt;
}

std::optional<LassoWord> StableChecker::left_word_fp(const Window &w0) const {
  Window key = canonicalize(w0).first;
  auto it = fp_left_cache_.find(key);
  if (it != fp_left_cache_.end())
    return it->second;

  BuchiLimits bl{limits_.max_states, limits_.max_rank_width};
  WindowAutomatonSpec bspec;
  bspec.ctx = ctx_;
  bspec.kind = AutomatonKind::B;
  bspec.direction = Direction::Left;
  bspec.initial = w0;
  bspec.allowed_mask = pi_vocab_mask_;
  Gnba checker = build_window_automaton(bspec, bl);
  for (const Window &w : competitor_windows(w0, InitialMode::Fp)) {
    WindowAutomatonSpec cspec;
    cspec.ctx = ctx_;
    cspec.kind = AutomatonKind::C;
    cspec.direction = Direction::Left;
    cspec.initial = w;
    cspec.allowed_mask = pi_vocab_mask_;
    checker = intersect(
        checker, complement(build_window_automaton(cspec, bl), bl));
  }
  auto result = is_empty(checker, bl);
  fp_left_cache_.emplace(std::move(key), result);
  return result;
}

std::optional<LassoWord> StableChecker::right_word_fp(const Window &w0) const {
  BuchiLimits bl{limits_.max_states, limits_.max_rank_width};
  auto [dlo, dhi] = data_extent(dataset_);
  Time j = dhi - dlo + 2 * ctx_->t_pi + 2;

  WindowAutomatonSpec fspec;
  fspec.ctx = ctx_;
  fspec.kind = AutomatonKind::F;
  fspec.direction = Direction::Right;
  fspec.initial = w0;
  fspec.absolute_positions = true;
  WindowAutomaton fa = build_window_automaton_full(fspec, bl);

  // phase 1: guess the first j windows one by one
  struct Node {
    std::uint64_t state;
    std::vector<Letter> word;
  };
  std::vector<Node> frontier{{fa.gnba.initial, {}}};
  for (Time step = 0; step < j; ++step) {
    std::vector<Node> next_frontier;
    std::set<std::uint64_t> seen;
    for (const Node &n : frontier) {
      for (const Letter &l : fa.gnba.letters(n.state)) {
        for (std::uint64_t t : fa.gnba.next(n.state, l)) {
          if (!seen.insert(t).second)
            continue;
          Node m{t, n.word};
          m.word.push_back(l);
          next_frontier.push_back(std::move(m));
        }
      }
      if (next_frontier.size() > limits_.max_candidates)
        throw GuardError("fp right search exceeded the candidate guard");
    }
    frontier = std::move(next_frontier);
    if (frontier.empty())
      return std::nullopt;
  }

  // phase 2: beyond t_max + t_pi dataset entailment is constant, so the
  // shift quotient is sound; run emptiness there
  for (const Node &n : frontier) {
    Gnba tail = fa.gnba;
    tail.initial = n.state;
    Gnba quot = quotient(tail, fa.canonical_key);
    if (auto lasso = is_empty(quot, bl)) {
      LassoWord out;
      out.prefix = n.word;
      out.prefix.insert(out.prefix.end(), lasso->prefix.begin(),
                        lasso->prefix.end());
      out.loop = lasso->loop;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<StableWitness> StableChecker::has_stable_model_fp() const {
  if (!is_forward_propagating(program_))
    throw InputError(
        "the fp checker requires a forward-propagating program");
  for (const Window &w0 : enumerate_initial_windows(InitialMode::Fp)) {
    auto left = left_word_fp(w0);
    if (!left)
      continue;
    auto right = right_word_fp(w0);
    if (!right)
      continue;
    StableWitness w;
    w.initial_window = w0;
    w.left = *left;
    w.right = *right;
    std::uint64_t rel_mask = 0;
    for (std::size_t m : ctx_->universe.relational())
      rel_mask |= 1ull << m;
    w.exact_tails = relationally_constant(w.left, rel_mask) &&
                    relationally_constant(w.right, rel_mask);
    if (!validate_witness(w))
      throw InvariantError(
          "fp checker produced a witness that fails the semantic oracle");
    return w;
  }
  return std::nullopt;
}

Interpretation StableChecker::witness_to_interpretation(
    const StableWitness &w, const Interval &horizon) const {
  if (!horizon.bounded())
    throw InputError("witness replay horizon must be bounded");
  Interpretation out;
  const CompiledUniverse &u = ctx_->universe;
  std::uint64_t rel_mask = 0;
  for (std::size_t m : u.relational())
    rel_mask |= 1ull << m;
  auto assert_mask = [&](std::uint64_t mask, Time t) {
    for (std::size_t m : u.relational())
      if ((mask >> m) & 1)
        out.assert_fact(u.universe().at(m)->ground_atom(),
                        Interval::point(t));
  };
  const Window &w0 = w.initial_window;
  for (Time t = w0.lo(); t <= w0.hi(); ++t) {
    std::uint64_t mask = 0;
    for (std::size_t m : u.relational())
      if (w0.there(m, t))
        mask |= 1ull << m;
    assert_mask(mask, t);
  }
  // replay both directions through the horizon plus one full loop, then
  // extend constant loops into tails
  auto replay = [&](const LassoWord &word, Time start, Time step, Time edge) {
    std::size_t p = word.prefix.size(), q = word.loop.size();
    Time covered =
        std::max<Time>(static_cast<Time>(p + q),
                       step > 0 ? edge - start + 1 : start - edge + 1);
    Time pos = start;
    for (Time i = 0; i < covered; ++i, pos += step) {
      const Letter &l = static_cast<std::size_t>(i) < p
                            ? word.prefix[static_cast<std::size_t>(i)]
                            : word.loop[static_cast<std::size_t>(
                                  (static_cast<std::size_t>(i) - p) % q)];
      assert_mask(l.a & rel_mask, pos);
    }
    if (w.exact_tails && q > 0) {
      std::uint64_t loop_mask = word.loop.front().a & rel_mask;
      for (std::size_t m : u.relational())
        if ((loop_mask >> m) & 1)
          out.assert_fact(u.universe().at(m)->ground_atom(),
                          step > 0 ? Interval::at_least(pos)
                                   : Interval::at_most(pos));
    }
  };
  if (!w.right.loop.empty())
    replay(w.right, w0.hi() + 1, 1, horizon.hi());
  if (!w.left.loop.empty())
    replay(w.left, w0.lo() - 1, -1, horizon.lo());
  return out;
}

bool StableChecker::validate_witness(const StableWitness &w) const {
  Interpretation interp = witness_to_interpretation(w, validation_horizon());
  SearchBox box;
  box.window = validation_horizon();
  for (std::size_t m : ctx_->universe.relational())
    box.atoms.push_back(ctx_->universe.universe().at(m)->ground_atom());
  return check_stable_witness(program_, dataset_, interp, box);
}

std::optional<StableWitness> has_stable_model_general(
    const Program &program, const Dataset &dataset, StableCheckLimits limits) {
  return StableChecker(program, dataset, limits).has_stable_model_general();
}

std::optional<StableWitness> has_stable_model_fp(const Program &program,
                                                 const Dataset &dataset,
                                                 StableCheckLimits limits) {
  return StableChecker(program, dataset, limits).has_stable_model_fp();
}

} // namespace temporalis
