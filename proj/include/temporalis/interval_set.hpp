#ifndef TEMPORALIS_INTERVAL_SET_HPP
#define TEMPORALIS_INTERVAL_SET_HPP

#include <vector>

#include "temporalis/interval.hpp"

namespace temporalis {

// Finite encoding of an arbitrary "where does this atom hold" set: sorted,
// disjoint runs with an integer gap of at least one between consecutive
// runs. The first run may reach -inf and the last +inf; those are the tails.
class IntervalSet {
public:
  IntervalSet() = default;

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet all();
  static IntervalSet of(const Interval &iv);
  // Minimal merged form of an arbitrary collection.
  static IntervalSet coalesce(std::vector<Interval> intervals);

  bool is_empty() const { return runs_.empty(); }
  bool contains(Time t) const;
  bool contains(const Interval &iv) const;  // every integer of iv
  bool left_tail() const {
    return !runs_.empty() && runs_.front().lo_infinite();
  }
  bool right_tail() const {
    return !runs_.empty() && runs_.back().hi_infinite();
  }

  const std::vector<Interval> &runs() const { return runs_; }

  void add(const Interval &iv);
  IntervalSet unite(const IntervalSet &other) const;

  // Pointwise subset test over all of Z.
  bool subset_of(const IntervalSet &other) const;

  // Hull of the finite endpoints appearing in the runs; nullopt when the set
  // is empty or all of Z.
  std::optional<std::pair<Time, Time>> finite_hull() const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet &a, const IntervalSet &b) {
    return a.runs_ == b.runs_;
  }
  friend bool operator!=(const IntervalSet &a, const IntervalSet &b) {
    return !(a == b);
  }
  friend bool operator<(const IntervalSet &a, const IntervalSet &b) {
    return a.runs_ < b.runs_;
  }

private:
  std::vector<Interval> runs_;
};

} // namespace temporalis

#endif
