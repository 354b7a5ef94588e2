#include "temporalis/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

namespace temporalis {

namespace {

// Interning table shared by the closures of a derived automaton.
template <typename V, typename Less = std::less<V>> class StateTable {
public:
  std::uint64_t intern(const V &v) {
    auto it = ids_.find(v);
    if (it != ids_.end())
      return it->second;
    std::uint64_t id = values_.size();
    ids_.emplace(v, id);
    values_.push_back(v);
    return id;
  }
  const V &value(std::uint64_t id) const { return values_.at(id); }
  std::size_t size() const { return values_.size(); }

private:
  std::map<V, std::uint64_t, Less> ids_;
  std::vector<V> values_;
};

struct MaterializedAutomaton {
  std::vector<std::vector<std::pair<Letter, std::vector<std::uint64_t>>>>
      edges;                       // dense id -> (letter, successors)
  std::vector<std::uint64_t> orig; // dense id -> original id
  std::unordered_map<std::uint64_t, std::uint64_t> dense;
  std::vector<Letter> alphabet;    // all proposed letters, deduplicated
  std::uint64_t initial = 0;
};

MaterializedAutomaton materialize(const Gnba &a, std::size_t max_states) {
  MaterializedAutomaton m;
  std::deque<std::uint64_t> queue;
  auto intern = [&](std::uint64_t s) {
    auto it = m.dense.find(s);
    if (it != m.dense.end())
      return it->second;
    std::uint64_t id = m.orig.size();
    m.dense.emplace(s, id);
    m.orig.push_back(s);
    m.edges.emplace_back();
    queue.push_back(s);
    if (m.orig.size() > max_states)
      throw GuardError("automaton materialization exceeded " +
                       std::to_string(max_states) + " states");
    return id;
  };
  m.initial = intern(a.initial);
  std::set<Letter> letters_seen;
  while (!queue.empty()) {
    std::uint64_t s = queue.front();
    queue.pop_front();
    std::uint64_t id = m.dense.at(s);
    for (const Letter &l : a.letters(s)) {
      letters_seen.insert(l);
      std::vector<std::uint64_t> succs;
      for (std::uint64_t t : a.next(s, l))
        succs.push_back(intern(t));
      if (!succs.empty())
        m.edges[id].emplace_back(l, std::move(succs));
    }
  }
  m.alphabet.assign(letters_seen.begin(), letters_seen.end());
  return m;
}

} // namespace

Gnba degeneralize(const Gnba &a) {
  std::size_t k = std::max<std::size_t>(a.num_accepting_sets, 1);
  bool trivial = a.num_accepting_sets == 0;
  auto inner = std::make_shared<Gnba>(a);
  // state id = inner_id * k + counter
  Gnba d;
  d.initial = a.initial * k;
  d.num_accepting_sets = 1;
  d.next = [inner, k, trivial](std::uint64_t s, const Letter &l) {
    std::uint64_t q = s / k;
    std::uint64_t c = s % k;
    std::uint64_t c2 = c;
    if (trivial || inner->accepting(q, c))
      c2 = (c + 1) % k;
    std::vector<std::uint64_t> out;
    for (std::uint64_t q2 : inner->next(q, l))
      out.push_back(q2 * k + c2);
    return out;
  };
  d.letters = [inner, k](std::uint64_t s) { return inner->letters(s / k); };
  d.accepting = [inner, k, trivial](std::uint64_t s, std::size_t) {
    std::uint64_t q = s / k;
    std::uint64_t c = s % k;
    return c == 0 && (trivial || inner->accepting(q, 0));
  };
  return d;
}

namespace {

Gnba product_impl(const Gnba &x, const Gnba &y, bool paired) {
  auto xi = std::make_shared<Gnba>(x);
  auto yi = std::make_shared<Gnba>(y);
  auto table =
      std::make_shared<StateTable<std::pair<std::uint64_t, std::uint64_t>>>();
  Gnba p;
  p.initial = table->intern({x.initial, y.initial});
  p.num_accepting_sets = x.num_accepting_sets + y.num_accepting_sets;
  p.next = [xi, yi, table, paired](std::uint64_t s, const Letter &l) {
    auto [sx, sy] = table->value(s);
    Letter lx = paired ? Letter{l.a, 0} : l;
    Letter ly = paired ? Letter{l.b, 0} : l;
    std::vector<std::uint64_t> out;
    for (std::uint64_t tx : xi->next(sx, lx))
      for (std::uint64_t ty : yi->next(sy, ly))
        out.push_back(table->intern({tx, ty}));
    return out;
  };
  p.letters = [xi, yi, table, paired](std::uint64_t s) {
    auto [sx, sy] = table->value(s);
    if (!paired)
      return xi->letters(sx);
    std::vector<Letter> out;
    for (const Letter &la : xi->letters(sx))
      for (const Letter &lb : yi->letters(sy))
        out.push_back(Letter{la.a, lb.a});
    return out;
  };
  std::size_t nx = x.num_accepting_sets;
  p.accepting = [xi, yi, table, nx](std::uint64_t s, std::size_t i) {
    auto [sx, sy] = table->value(s);
    return i < nx ? xi->accepting(sx, i) : yi->accepting(sy, i - nx);
  };
  return p;
}

} // namespace

Gnba pairwise_product(const Gnba &x, const Gnba &y) {
  return product_impl(x, y, true);
}

Gnba intersect(const Gnba &x, const Gnba &y) {
  return product_impl(x, y, false);
}

Gnba gnba_union(const Gnba &x, const Gnba &y) {
  auto xd = std::make_shared<Gnba>(degeneralize(x));
  auto yd = std::make_shared<Gnba>(degeneralize(y));
  // 0 = fresh initial, odd ids = x states, even > 0 = y states
  auto encode_x = [](std::uint64_t s) { return s * 2 + 1; };
  auto encode_y = [](std::uint64_t s) { return s * 2 + 2; };
  Gnba u;
  u.initial = 0;
  u.num_accepting_sets = 1;
  u.next = [xd, yd, encode_x, encode_y](std::uint64_t s, const Letter &l) {
    std::vector<std::uint64_t> out;
    if (s == 0) {
      for (std::uint64_t t : xd->next(xd->initial, l))
        out.push_back(encode_x(t));
      for (std::uint64_t t : yd->next(yd->initial, l))
        out.push_back(encode_y(t));
    } else if (s % 2 == 1) {
      for (std::uint64_t t : xd->next((s - 1) / 2, l))
        out.push_back(encode_x(t));
    } else {
      for (std::uint64_t t : yd->next((s - 2) / 2, l))
        out.push_back(encode_y(t));
    }
    return out;
  };
  u.letters = [xd, yd](std::uint64_t s) {
    if (s == 0) {
      std::vector<Letter> out = xd->letters(xd->initial);
      std::vector<Letter> more = yd->letters(yd->initial);
      out.insert(out.end(), more.begin(), more.end());
      return out;
    }
    return s % 2 == 1 ? xd->letters((s - 1) / 2) : yd->letters((s - 2) / 2);
  };
  u.accepting = [xd, yd](std::uint64_t s, std::size_t) {
    if (s == 0)
      return false;
    return s % 2 == 1 ? xd->accepting((s - 1) / 2, 0)
                      : yd->accepting((s - 2) / 2, 0);
  };
  return u;
}

namespace {

// Level ranking with a breakpoint set: dom is sorted by state id; O holds
// the even-ranked runs being tracked. Successors keep, per parity pattern,
// the pointwise-maximal ranking; lower rankings are subsumed.
struct RankState {
  std::vector<std::pair<std::uint64_t, int>> ranks;  // sorted by state
  std::vector<std::uint64_t> owing;                  // subset of dom, sorted

  friend bool operator<(const RankState &a, const RankState &b) {
    if (a.ranks != b.ranks)
      return a.ranks < b.ranks;
    return a.owing < b.owing;
  }
};

} // namespace

Gnba complement(const Gnba &a, const BuchiLimits &limits) {
  Gnba nba = degeneralize(a);
  auto m = std::make_shared<MaterializedAutomaton>(
      materialize(nba, limits.max_states));
  auto base = std::make_shared<Gnba>(nba);
  int max_rank = 2 * static_cast<int>(m->orig.size());
  std::size_t width_guard = limits.max_rank_width;

  auto accepting_orig = [base, m](std::uint64_t dense_id) {
    return base->accepting(m->orig[dense_id], 0);
  };

  auto table = std::make_shared<StateTable<RankState>>();
  RankState init;
  {
    int r = max_rank;
    if (accepting_orig(m->initial) && r % 2 == 1)
      --r;
    init.ranks.emplace_back(m->initial, r);
  }
  Gnba c;
  c.initial = table->intern(init);
  c.num_accepting_sets = 1;

  c.next = [base, m, table, accepting_orig, width_guard](
               std::uint64_t s, const Letter &l) -> std::vector<std::uint64_t> {
    RankState cur = table->value(s);
    // propagate: bound(q') = min over predecessors of their rank
    std::map<std::uint64_t, int> bound;
    std::set<std::uint64_t> owing_succ;
    for (const auto &[dq, rank] : cur.ranks) {
      bool owing = std::binary_search(cur.owing.begin(), cur.owing.end(), dq);
      for (std::uint64_t t : base->next(m->orig[dq], l)) {
        auto it = m->dense.find(t);
        std::uint64_t dt;
        if (it == m->dense.end())
          throw InvariantError("complement: successor outside materialized "
                               "automaton");
        dt = it->second;
        auto b = bound.find(dt);
        if (b == bound.end())
          bound.emplace(dt, rank);
        else
          b->second = std::min(b->second, rank);
        if (owing)
          owing_succ.insert(dt);
      }
    }
    std::vector<std::pair<std::uint64_t, int>> dom(bound.begin(), bound.end());
    if (dom.empty()) {
      // no run survives: accepting sink
      return {table->intern(RankState{})};
    }
    if (dom.size() > width_guard)
      throw GuardError("complementation level width " +
                       std::to_string(dom.size()) + " exceeds the guard (" +
                       std::to_string(width_guard) + ")");
    // enumerate parity patterns; per pattern the maximal ranking
    std::vector<std::uint64_t> out;
    std::size_t n = dom.size();
    for (std::uint64_t pattern = 0; pattern < (1ull << n); ++pattern) {
      RankState succ;
      bool valid = true;
      bool was_owing_empty = cur.owing.empty();
      for (std::size_t i = 0; i < n && valid; ++i) {
        auto [dq, b] = dom[i];
        bool want_even = (pattern >> i) & 1;
        if (accepting_orig(dq) && !want_even) {
          valid = false;
          break;
        }
        int r = b;
        if ((r % 2 == 0) != want_even)
          --r;
        if (r < 0) {
          valid = false;
          break;
        }
        succ.ranks.emplace_back(dq, r);
        bool even = r % 2 == 0;
        if (even && (was_owing_empty || owing_succ.count(dq)))
          succ.owing.push_back(dq);
      }
      if (valid)
        out.push_back(table->intern(succ));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  c.letters = [m](std::uint64_t) { return m->alphabet; };
  c.accepting = [table](std::uint64_t s, std::size_t) {
    return table->value(s).owing.empty();
  };
  return c;
}

Gnba quotient(const Gnba &a,
              std::function<std::uint64_t(std::uint64_t)> canonical_key) {
  auto inner = std::make_shared<Gnba>(a);
  auto canon = std::make_shared<std::function<std::uint64_t(std::uint64_t)>>(
      std::move(canonical_key));
  // key -> representative original state
  auto reps =
      std::make_shared<std::unordered_map<std::uint64_t, std::uint64_t>>();
  auto table = std::make_shared<StateTable<std::uint64_t>>();
  auto intern = [inner, canon, reps, table](std::uint64_t orig) {
    std::uint64_t key = (*canon)(orig);
    reps->emplace(key, orig);
    return table->intern(key);
  };
  Gnba q;
  q.initial = intern(a.initial);
  q.num_accepting_sets = a.num_accepting_sets;
  auto rep_of = [reps, table](std::uint64_t s) {
    return reps->at(table->value(s));
  };
  q.next = [inner, intern, rep_of](std::uint64_t s, const Letter &l) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t t : inner->next(rep_of(s), l))
      out.push_back(intern(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  q.letters = [inner, rep_of](std::uint64_t s) {
    return inner->letters(rep_of(s));
  };
  q.accepting = [inner, rep_of](std::uint64_t s, std::size_t i) {
    return inner->accepting(rep_of(s), i);
  };
  return q;
}

namespace {

struct Explored {
  // dense graph of the degeneralized automaton
  std::vector<std::vector<std::pair<Letter, std::uint64_t>>> edges;
  std::vector<std::uint64_t> orig;
  std::unordered_map<std::uint64_t, std::uint64_t> dense;
  std::uint64_t initial = 0;
};

Explored explore(const Gnba &nba, std::size_t max_states) {
  Explored g;
  std::deque<std::uint64_t> queue;
  auto intern = [&](std::uint64_t s) {
    auto it = g.dense.find(s);
    if (it != g.dense.end())
      return it->second;
    std::uint64_t id = g.orig.size();
    g.dense.emplace(s, id);
    g.orig.push_back(s);
    g.edges.emplace_back();
    queue.push_back(s);
    if (g.orig.size() > max_states)
      throw GuardError("emptiness search exceeded " +
                       std::to_string(max_states) + " states");
    return id;
  };
  g.initial = intern(nba.initial);
  while (!queue.empty()) {
    std::uint64_t s = queue.front();
    queue.pop_front();
    std::uint64_t id = g.dense.at(s);
    for (const Letter &l : nba.letters(s))
      for (std::uint64_t t : nba.next(s, l))
        g.edges[id].emplace_back(l, intern(t));
  }
  return g;
}

// Shortest letter path from one node to another (or a nonempty cycle when
// from == to); BFS, deterministic in edge order.
std::optional<std::vector<Letter>> letter_path(const Explored &g,
                                               std::uint64_t from,
                                               std::uint64_t to,
                                               bool nonempty) {
  if (from == to && !nonempty)
    return std::vector<Letter>{};
  std::vector<int> prev(g.orig.size(), -1);
  std::vector<std::pair<std::uint64_t, Letter>> via(g.orig.size());
  std::deque<std::uint64_t> queue{from};
  std::vector<bool> seen(g.orig.size(), false);
  // do not mark `from` seen so a cycle can come back to it
  while (!queue.empty()) {
    std::uint64_t s = queue.front();
    queue.pop_front();
    for (const auto &[l, t] : g.edges[s]) {
      if (t == to) {
        std::vector<Letter> path{l};
        std::uint64_t cur = s;
        while (cur != from) {
          path.push_back(via[cur].second);
          cur = via[cur].first;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[t] && t != from) {
        seen[t] = true;
        via[t] = {s, l};
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<LassoWord> is_empty(const Gnba &a, const BuchiLimits &limits) {
  Gnba nba = degeneralize(a);
  Explored g = explore(nba, limits.max_states);
  for (std::uint64_t f = 0; f < g.orig.size(); ++f) {
    if (!nba.accepting(g.orig[f], 0))
      continue;
    auto prefix = letter_path(g, g.initial, f, false);
    if (!prefix)
      continue;
    auto loop = letter_path(g, f, f, true);
    if (!loop)
      continue;
    return LassoWord{*prefix, *loop};
  }
  return std::nullopt;
}

bool accepts_lasso(const Gnba &a, const LassoWord &w,
                   const BuchiLimits &limits) {
  if (w.loop.empty())
    throw InputError("lasso loop must be nonempty");
  std::size_t p = w.prefix.size();
  std::size_t q = w.loop.size();
  // product with the lasso ring: (state, position), position in [0, p+q)
  struct Node {
    std::uint64_t state;
    std::size_t pos;
    bool operator<(const Node &o) const {
      return state != o.state ? state < o.state : pos < o.pos;
    }
  };
  auto letter_at = [&](std::size_t pos) -> const Letter & {
    return pos < p ? w.prefix[pos] : w.loop[pos - p];
  };
  auto advance = [&](std::size_t pos) {
    std::size_t n = pos + 1;
    return n == p + q ? p : n;
  };
  std::map<Node, std::size_t> ids;
  std::vector<Node> nodes;
  std::deque<std::size_t> queue;
  auto intern = [&](Node n) {
    auto it = ids.find(n);
    if (it != ids.end())
      return it->second;
    std::size_t id = nodes.size();
    ids.emplace(n, id);
    nodes.push_back(n);
    queue.push_back(id);
    if (nodes.size() > limits.max_states)
      throw GuardError("lasso membership product exceeded the state guard");
    return id;
  };
  std::vector<std::vector<std::size_t>> succ;
  intern(Node{a.initial, 0});
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    Node n = nodes[id];
    std::vector<std::size_t> out;
    for (std::uint64_t t : a.next(n.state, letter_at(n.pos)))
      out.push_back(intern(Node{t, advance(n.pos)}));
    if (succ.size() <= id)
      succ.resize(id + 1);
    succ[id] = std::move(out);
  }
  succ.resize(nodes.size());

  // Tarjan SCC over the product; accept iff some reachable SCC with an edge
  // inside the loop region meets every accepting set.
  std::size_t n = nodes.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<std::size_t> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    std::size_t v;
    std::size_t ei;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1)
      continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    onstack[root] = true;
    while (!frames.empty()) {
      Frame &f = frames.back();
      if (f.ei < succ[f.v].size()) {
        std::size_t w2 = succ[f.v][f.ei++];
        if (index[w2] == -1) {
          index[w2] = low[w2] = next_index++;
          stack.push_back(w2);
          onstack[w2] = true;
          frames.push_back({w2, 0});
        } else if (onstack[w2]) {
          low[f.v] = std::min(low[f.v], index[w2]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            std::size_t w2 = stack.back();
            stack.pop_back();
            onstack[w2] = false;
            comp[w2] = next_comp;
            if (w2 == f.v)
              break;
          }
          ++next_comp;
        }
        std::size_t v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  std::size_t nsets = std::max<std::size_t>(a.num_accepting_sets, 1);
  bool trivial = a.num_accepting_sets == 0;
  std::vector<std::vector<bool>> meets(static_cast<std::size_t>(next_comp),
                                       std::vector<bool>(nsets, false));
  std::vector<bool> has_edge(static_cast<std::size_t>(next_comp), false);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w2 : succ[v])
      if (comp[w2] == comp[v])
        has_edge[static_cast<std::size_t>(comp[v])] = true;
    if (nodes[v].pos >= p) {  // only loop-region visits count
      for (std::size_t i = 0; i < nsets; ++i)
        if (trivial || a.accepting(nodes[v].state, i))
          meets[static_cast<std::size_t>(comp[v])][i] = true;
    }
  }
  for (int cmp = 0; cmp < next_comp; ++cmp) {
    if (!has_edge[static_cast<std::size_t>(cmp)])
      continue;
    bool all = true;
    for (std::size_t i = 0; i < nsets; ++i)
      if (!meets[static_cast<std::size_t>(cmp)][i]) {
        all = false;
        break;
      }
    if (all)
      return true;
  }
  return false;
}

std::string dot_export(const Gnba &a, std::size_t max_states) {
  Gnba nba = degeneralize(a);
  Explored g = explore(nba, max_states);
  std::string s = "digraph gnba {\n  rankdir=LR;\n";
  for (std::uint64_t v = 0; v < g.orig.size(); ++v) {
    s += "  n" + std::to_string(v);
    s += nba.accepting(g.orig[v], 0) ? " [shape=doublecircle];\n"
                                     : " [shape=circle];\n";
  }
  for (std::uint64_t v = 0; v < g.orig.size(); ++v)
    for (const auto &[l, t] : g.edges[v])
      s += "  n" + std::to_string(v) + " -> n" + std::to_string(t) +
           " [label=\"" + std::to_string(l.a) +
           (l.b ? ("," + std::to_string(l.b)) : "") + "\"];\n";
  s += "}\n";
  return s;
}

} // namespace temporalis
