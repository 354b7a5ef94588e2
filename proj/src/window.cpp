#include "temporalis/window.hpp"

#include <algorithm>

#include "temporalis/normalize.hpp"

namespace temporalis {

namespace {

int operand_index(const AtomUniverse &u, const AtomPtr &operand) {
  switch (operand->kind()) {
  case AtomKind::Top:
    return CompiledUniverse::kTop;
  case AtomKind::Bottom:
    return CompiledUniverse::kBottom;
  case AtomKind::Rel: {
    auto idx = u.index_of(operand);
    if (!idx)
      throw InvariantError("operand " + operand->to_string() +
                           " missing from the atom universe");
    return static_cast<int>(*idx);
  }
  default:
    throw InvariantError("universe atom is not flat: operand " +
                         operand->to_string());
  }
}

} // namespace

CompiledUniverse::CompiledUniverse(AtomUniverse universe)
    : universe_(std::move(universe)) {
  entries_.reserve(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    const AtomPtr &a = universe_.at(i);
    Entry e;
    e.kind = a->kind();
    switch (a->kind()) {
    case AtomKind::Rel:
      relational_.push_back(i);
      break;
    case AtomKind::BoxMinus:
    case AtomKind::BoxPlus:
      e.rhs = operand_index(universe_, a->rhs());
      break;
    case AtomKind::Since:
    case AtomKind::Until:
      e.lhs = operand_index(universe_, a->lhs());
      e.rhs = operand_index(universe_, a->rhs());
      break;
    default:
      throw InvariantError("universe atom " + a->to_string() +
                           " is not in normal form");
    }
    if (a->kind() != AtomKind::Rel) {
      const Interval &rho = a->rho();
      e.lo = rho.lo();
      e.unbounded = rho.hi_infinite();
      e.hi = e.unbounded ? 0 : rho.hi();
      if (e.unbounded && e.lo != 0)
        throw InvariantError("universe atom " + a->to_string() +
                             " has a non-normal unbounded interval");
    }
    entries_.push_back(e);
  }
}

std::vector<CompiledRule> compile_rules(const std::vector<Rule> &ground_rules,
                                        const CompiledUniverse &u) {
  std::vector<CompiledRule> out;
  for (const Rule &r : ground_rules) {
    if (!r.is_ground())
      throw InvariantError("compile_rules: rule has variables");
    CompiledRule cr;
    if (r.head->kind() == AtomKind::Top)
      continue;  // trivially satisfied
    if (r.head->kind() == AtomKind::Bottom) {
      cr.head = CompiledUniverse::kBottom;
    } else if (r.head->kind() == AtomKind::Rel) {
      cr.head = operand_index(u.universe(), r.head);
    } else {
      throw InvariantError("compile_rules: head not in normal form: " +
                           r.head->to_string());
    }
    for (const auto &a : r.positive) {
      if (a->kind() == AtomKind::Top)
        continue;
      if (a->kind() == AtomKind::Bottom) {
        cr.never_fires = true;
        continue;
      }
      auto idx = u.universe().index_of(a);
      if (!idx)
        throw InvariantError("compile_rules: body atom " + a->to_string() +
                             " missing from the universe");
      cr.positive.push_back(static_cast<int>(*idx));
    }
    for (const auto &a : r.negative) {
      if (a->kind() == AtomKind::Top) {
        cr.never_fires = true;
        continue;
      }
      if (a->kind() == AtomKind::Bottom)
        continue;
      auto idx = u.universe().index_of(a);
      if (!idx)
        throw InvariantError("compile_rules: body atom " + a->to_string() +
                             " missing from the universe");
      cr.negative.push_back(static_cast<int>(*idx));
    }
    out.push_back(std::move(cr));
  }
  return out;
}

DatasetEntailment::DatasetEntailment(const Dataset &dataset,
                                     const CompiledUniverse &u) {
  natoms_ = u.size();
  Time reach = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    reach = std::max(reach, atom_reach(u.universe().at(i)));
  auto [dlo, dhi] = data_extent(dataset);
  lo_ = dlo - reach - 2;
  hi_ = dhi + reach + 2;
  Interpretation canon = canonical_interpretation(dataset);
  InterpretationSource src(canon);
  grid_.assign(static_cast<std::size_t>(hi_ - lo_ + 1) * natoms_, false);
  for (std::size_t m = 0; m < natoms_; ++m)
    for (Time t = lo_; t <= hi_; ++t)
      grid_[static_cast<std::size_t>(t - lo_) * natoms_ + m] =
          eval_metric_atom(src, u.universe().at(m), t);
}

bool DatasetEntailment::entails(std::size_t atom, Time t) const {
  if (natoms_ == 0)
    return false;
  Time clamped = std::clamp(t, lo_, hi_);
  return grid_[static_cast<std::size_t>(clamped - lo_) * natoms_ + atom];
}

WindowContext WindowContext::make(const Program &normalized_program,
                                  const Dataset &dataset) {
  if (!is_normal_form(normalized_program))
    throw InputError("window context requires a normalized program");
  WindowContext ctx;
  ctx.universe =
      CompiledUniverse(atom_universe(normalized_program, dataset));
  ctx.rules =
      compile_rules(ground(normalized_program, dataset), ctx.universe);
  ctx.data = DatasetEntailment(dataset, ctx.universe);
  ctx.t_pi = normalized_program.t_pi();
  return ctx;
}

Window::Window(Time lo, int len, std::size_t natoms)
    : lo_(lo), len_(len), natoms_(natoms),
      here_(static_cast<std::size_t>(len + 1) * natoms),
      there_(static_cast<std::size_t>(len + 1) * natoms) {
  if (len < 0)
    throw InvariantError("window with negative length");
}

Window Window::shifted(Time delta) const {
  Window w = *this;
  w.lo_ = time_add(lo_, delta);
  return w;
}

bool operator<(const Window &a, const Window &b) {
  if (a.lo_ != b.lo_)
    return a.lo_ < b.lo_;
  if (a.len_ != b.len_)
    return a.len_ < b.len_;
  if (a.b_ != b.b_)
    return a.b_ < b.b_;
  if (!(a.here_ == b.here_))
    return a.here_ < b.here_;
  return a.there_ < b.there_;
}

std::string Window::debug_json(const CompiledUniverse &u) const {
  std::string s = "{\"rho\":[" + std::to_string(lo_) + "," +
                  std::to_string(hi()) + "],\"b\":" + (b_ ? "1" : "0");
  for (int layer = 0; layer < 2; ++layer) {
    s += layer == 0 ? ",\"H\":[" : ",\"T\":[";
    bool first = true;
    for (Time t = lo_; t <= hi(); ++t)
      for (std::size_t m = 0; m < natoms_; ++m) {
        bool v = layer == 0 ? here(m, t) : there(m, t);
        if (!v)
          continue;
        if (!first)
          s += ",";
        first = false;
        s += "\"" + u.universe().at(m)->to_string() + "@" +
             std::to_string(t) + "\"";
      }
    s += "]";
  }
  return s + "}";
}

namespace {

using Getter = std::function<bool(std::size_t, Time)>;

bool operand_value(const Getter &get, int idx, Time t) {
  if (idx == CompiledUniverse::kTop)
    return true;
  if (idx == CompiledUniverse::kBottom)
    return false;
  return get(static_cast<std::size_t>(idx), t);
}

// The per-layer realizability constraints of one compound atom.
std::optional<std::string> check_atom_layer(const Window &w,
                                            const CompiledUniverse &u,
                                            std::size_t m, const Getter &get,
                                            const char *layer) {
  const CompiledUniverse::Entry &e = u.entry(m);
  Time lo = w.lo(), hi = w.hi();
  auto fail = [&](Time t, const char *what) {
    return std::string(layer) + " layer: " +
           u.universe().at(m)->to_string() + "@" + std::to_string(t) + ": " +
           what;
  };
  switch (e.kind) {
  case AtomKind::Rel:
    return std::nullopt;
  case AtomKind::BoxMinus:
  case AtomKind::BoxPlus: {
    bool past = e.kind == AtomKind::BoxMinus;
    for (Time t = lo; t <= hi; ++t) {
      bool v = get(m, t);
      if (e.unbounded) {
        Time edge = past ? lo : hi;
        Time prev = past ? t - 1 : t + 1;  // closer to the tail
        if (t == edge) {
          if (v && !operand_value(get, e.rhs, t))
            return fail(t, "unbounded box holds without its operand");
        } else {
          bool expect = get(m, prev) && operand_value(get, e.rhs, t);
          if (v != expect)
            return fail(t, "unbounded box breaks the adjacent recurrence");
        }
        continue;
      }
      Time rlo = past ? t - e.hi : t + e.lo;
      Time rhi = past ? t - e.lo : t + e.hi;
      bool inside = rlo >= lo && rhi <= hi;
      if (inside) {
        bool all = true;
        for (Time s = rlo; s <= rhi && all; ++s)
          all = operand_value(get, e.rhs, s);
        if (v != all)
          return fail(t, "bounded box differs from its evaluation");
      } else if (v) {
        for (Time s = std::max(rlo, lo); s <= std::min(rhi, hi); ++s)
          if (!operand_value(get, e.rhs, s))
            return fail(t, "bounded box holds over a false operand");
      }
    }
    return std::nullopt;
  }
  case AtomKind::Since:
  case AtomKind::Until: {
    bool past = e.kind == AtomKind::Since;
    for (Time t = lo; t <= hi; ++t) {
      bool v = get(m, t);
      if (e.unbounded) {
        Time edge = past ? lo : hi;
        if (t == edge) {
          if (operand_value(get, e.rhs, t) && !v)
            return fail(t, "witness at distance zero but atom false");
        } else {
          Time prev = past ? t - 1 : t + 1;
          bool expect = operand_value(get, e.rhs, t) ||
                        operand_value(get, e.rhs, prev) ||
                        (get(m, prev) && operand_value(get, e.lhs, prev));
          if (v != expect)
            return fail(t, "unbounded since/until breaks the recurrence");
        }
        continue;
      }
      // witnesses at distance in [e.lo, e.hi]
      Time wnear = past ? t - e.lo : t + e.lo;
      Time wfar = past ? t - e.hi : t + e.hi;
      bool far_inside = past ? wfar >= lo : wfar <= hi;
      bool any = false;
      if (past ? wnear >= lo : wnear <= hi) {
        bool chain = true;
        // lhs over the open range between the witness and t
        for (Time s = past ? wnear + 1 : t + 1;
             s <= (past ? t - 1 : wnear - 1) && chain; ++s)
          chain = operand_value(get, e.lhs, s);
        for (Time s = wnear; past ? s >= std::max(wfar, lo)
                                  : s <= std::min(wfar, hi);
             s += past ? -1 : 1) {
          if (chain && operand_value(get, e.rhs, s)) {
            any = true;
            break;
          }
          chain = chain && operand_value(get, e.lhs, s);
        }
      }
      if (far_inside) {
        if (v != any)
          return fail(t, "bounded since/until differs from its evaluation");
      } else {
        if (any && !v)
          return fail(t, "witness present but atom false");
        if (v && !any) {
          // an outside witness still needs lhs up to the window edge
          for (Time s = past ? lo : t + 1; s <= (past ? t - 1 : hi); ++s)
            if (!operand_value(get, e.lhs, s))
              return fail(t, "outside witness blocked by a false lhs");
        }
      }
    }
    return std::nullopt;
  }
  default:
    throw InvariantError("diamond atom in a compiled universe");
  }
}

std::optional<std::string> check_layer(const Window &w,
                                       const WindowContext &ctx,
                                       const Getter &get, const char *layer) {
  for (std::size_t m = 0; m < ctx.universe.size(); ++m)
    if (auto err = check_atom_layer(w, ctx.universe, m, get, layer))
      return err;
  return std::nullopt;
}

} // namespace

WindowValidity validate_window(const Window &w, const WindowContext &ctx,
                               bool require_dataset) {
  WindowValidity v;
  if (w.natoms() != ctx.universe.size()) {
    v.ok = false;
    v.reason = "window width does not match the universe";
    return v;
  }
  if (!w.here_bits().subset_of(w.there_bits())) {
    v.ok = false;
    v.reason = "H is not a subset of T";
    return v;
  }
  Getter here = [&w](std::size_t m, Time t) { return w.here(m, t); };
  Getter there = [&w](std::size_t m, Time t) { return w.there(m, t); };
  if (auto err = check_layer(w, ctx, here, "here")) {
    v.ok = false;
    v.reason = *err;
    return v;
  }
  if (auto err = check_layer(w, ctx, there, "there")) {
    v.ok = false;
    v.reason = *err;
    return v;
  }
  // local satisfaction, both clauses
  for (std::size_t ri = 0; ri < ctx.rules.size(); ++ri) {
    const CompiledRule &r = ctx.rules[ri];
    if (r.never_fires)
      continue;
    for (Time t = w.lo(); t <= w.hi(); ++t) {
      bool neg_ok = true;
      for (int m : r.negative)
        if (w.there(static_cast<std::size_t>(m), t)) {
          neg_ok = false;
          break;
        }
      if (!neg_ok)
        continue;
      bool fires_t = true;
      for (int m : r.positive)
        if (!w.there(static_cast<std::size_t>(m), t)) {
          fires_t = false;
          break;
        }
      if (fires_t && (r.head == CompiledUniverse::kBottom ||
                      !w.there(static_cast<std::size_t>(r.head), t))) {
        v.ok = false;
        v.reason = "rule #" + std::to_string(ri) +
                   " locally violated in T at t=" + std::to_string(t);
        return v;
      }
      bool fires_h = true;
      for (int m : r.positive)
        if (!w.here(static_cast<std::size_t>(m), t)) {
          fires_h = false;
          break;
        }
      if (fires_h && (r.head == CompiledUniverse::kBottom ||
                      !w.here(static_cast<std::size_t>(r.head), t))) {
        v.ok = false;
        v.reason = "rule #" + std::to_string(ri) +
                   " locally violated in H at t=" + std::to_string(t);
        return v;
      }
    }
  }
  if (require_dataset) {
    for (std::size_t m = 0; m < ctx.universe.size(); ++m)
      for (Time t = w.lo(); t <= w.hi(); ++t)
        if (ctx.data.entails(m, t) && !w.here(m, t)) {
          v.ok = false;
          v.reason = "dataset fact " +
                     ctx.universe.universe().at(m)->to_string() + "@" +
                     std::to_string(t) + " missing from H";
          return v;
        }
  }
  return v;
}

Window fragment(const Window &w, FragmentSide side, Time t_pi) {
  if (w.len() < t_pi)
    throw InputError("fragment: window shorter than t_pi");
  int len = static_cast<int>(t_pi);
  Time lo = side == FragmentSide::Left ? w.lo() : w.hi() - t_pi;
  Window out(lo, len, w.natoms());
  for (Time t = lo; t <= lo + len; ++t)
    for (std::size_t m = 0; m < w.natoms(); ++m) {
      out.set_here(m, t, w.here(m, t));
      out.set_there(m, t, w.there(m, t));
    }
  out.set_b(!out.here_equals_there());
  return out;
}

Window window_union(const Window &w1, const Window &w2,
                    const WindowContext &ctx) {
  if (w1.natoms() != w2.natoms())
    throw InputError("window union: different universes");
  if (w2.lo() < w1.lo() || w2.hi() < w1.hi())
    throw InputError("window union: second window must succeed the first");
  if (w2.lo() > w1.hi())
    throw InputError("window union: rho overlap is empty");
  if (w1.len() < ctx.t_pi || w2.len() < ctx.t_pi)
    throw InputError("window union: windows shorter than t_pi");
  for (Time t = w2.lo(); t <= w1.hi(); ++t)
    for (std::size_t m = 0; m < w1.natoms(); ++m)
      if (w1.here(m, t) != w2.here(m, t) || w1.there(m, t) != w2.there(m, t))
        throw InputError("window union: facts disagree on the overlap");
  for (const Window *w : {&w1, &w2})
    if (auto v = validate_window(*w, ctx, false); !v.ok)
      throw InputError("window union: input does not locally satisfy the "
                       "program: " +
                       v.reason);
  Window out(w1.lo(), static_cast<int>(w2.hi() - w1.lo()), w1.natoms());
  for (Time t = out.lo(); t <= out.hi(); ++t)
    for (std::size_t m = 0; m < out.natoms(); ++m) {
      const Window &src = t <= w1.hi() ? w1 : w2;
      out.set_here(m, t, src.here(m, t));
      out.set_there(m, t, src.there(m, t));
    }
  out.set_b(w1.b() || w2.b());
  return out;
}

std::pair<Window, Time> canonicalize(const Window &w) {
  Time offset = -w.lo();
  return {w.shifted(offset), offset};
}

std::vector<Window> decompose(const HTInterpretation &ht, const Interval &rho,
                              Time first, Time last,
                              const CompiledUniverse &u) {
  if (!rho.bounded())
    throw InputError("decompose: rho must be bounded");
  if (first > last)
    return {};
  Time all_lo = std::min<Time>(first, 0);
  Time all_hi = std::max<Time>(last, 0);
  int len = static_cast<int>(rho.length());
  InterpretationSource here_src(ht.here), there_src(ht.there);

  std::vector<Window> windows;
  std::vector<bool> neq;
  for (Time i = all_lo; i <= all_hi; ++i) {
    Window w(rho.lo() + i, len, u.size());
    for (Time t = w.lo(); t <= w.hi(); ++t)
      for (std::size_t m = 0; m < u.size(); ++m) {
        w.set_here(m, t, eval_metric_atom(here_src, u.universe().at(m), t));
        w.set_there(m, t,
                    eval_metric_atom(there_src, u.universe().at(m), t));
      }
    windows.push_back(std::move(w));
    neq.push_back(!windows.back().here_equals_there());
  }
  auto neq_between = [&](Time i) {
    Time a = std::min<Time>(i, 0), b = std::max<Time>(i, 0);
    for (Time j = a; j <= b; ++j)
      if (neq[static_cast<std::size_t>(j - all_lo)])
        return true;
    return false;
  };
  std::vector<Window> out;
  for (Time i = first; i <= last; ++i) {
    Window w = windows[static_cast<std::size_t>(i - all_lo)];
    w.set_b(neq_between(i));
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

// Cheap consistency filter between a window's edge column and a candidate
// adjacent column; exact constraints are re-checked by validate_window on
// the extended window, this only prunes the enumeration.
bool adjacent_column_ok(const WindowContext &ctx, FragmentSide side,
                        const Getter &edge, const Getter &fresh,
                        Time edge_t, Time fresh_t) {
  const CompiledUniverse &u = ctx.universe;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const CompiledUniverse::Entry &e = u.entry(m);
    auto ev = [&](int idx) { return operand_value(edge, idx, edge_t); };
    auto fv = [&](int idx) { return operand_value(fresh, idx, fresh_t); };
    bool xe = edge(m, edge_t);
    bool xf = fresh(m, fresh_t);
    switch (e.kind) {
    case AtomKind::BoxMinus:
      if (!e.unbounded)
        break;
      // X(t) = X(t-1) /\ A(t)
      if (side == FragmentSide::Left) {
        if (xe != (xf && ev(e.rhs)))
          return false;
      } else {
        if (xf != (xe && fv(e.rhs)))
          return false;
      }
      break;
    case AtomKind::BoxPlus:
      if (!e.unbounded)
        break;
      // X(t) = A(t) /\ X(t+1)
      if (side == FragmentSide::Left) {
        if (xf != (fv(e.rhs) && xe))
          return false;
      } else {
        if (xe != (ev(e.rhs) && xf))
          return false;
      }
      break;
    case AtomKind::Since:
      if (e.unbounded) {
        // X(t) = A2(t) \/ A2(t-1) \/ (X(t-1) /\ A1(t-1))
        if (side == FragmentSide::Left) {
          if (xe != (ev(e.rhs) || fv(e.rhs) || (xf && fv(e.lhs))))
            return false;
        } else {
          if (xf != (fv(e.rhs) || ev(e.rhs) || (xe && ev(e.lhs))))
            return false;
        }
      } else if (e.lo == 0) {
        if (fv(e.rhs) && !xf)
          return false;
      }
      break;
    case AtomKind::Until:
      if (e.unbounded) {
        // X(t) = A2(t) \/ A2(t+1) \/ (X(t+1) /\ A1(t+1))
        if (side == FragmentSide::Left) {
          if (xf != (fv(e.rhs) || ev(e.rhs) || (xe && ev(e.lhs))))
            return false;
        } else {
          if (xe != (ev(e.rhs) || fv(e.rhs) || (xf && fv(e.lhs))))
            return false;
        }
      } else if (e.lo == 0) {
        if (fv(e.rhs) && !xf)
          return false;
      }
      break;
    default:
      break;
    }
  }
  return true;
}

} // namespace

std::vector<std::uint64_t> feasible_adjacent_columns(const Window &w,
                                                     const WindowContext &ctx,
                                                     FragmentSide side) {
  std::size_t n = ctx.universe.size();
  if (n > ctx.max_enumeration_bits)
    throw GuardError("universe of " + std::to_string(n) +
                     " atoms is too large for column enumeration");
  Time edge_t = side == FragmentSide::Left ? w.lo() : w.hi();
  Time fresh_t = side == FragmentSide::Left ? w.lo() - 1 : w.hi() + 1;
  Getter edge = [&w](std::size_t m, Time t) { return w.there(m, t); };
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Getter fresh = [mask](std::size_t m, Time) {
      return (mask >> m) & 1;
    };
    if (adjacent_column_ok(ctx, side, edge, fresh, edge_t, fresh_t))
      out.push_back(mask);
  }
  return out;
}

} // namespace temporalis
