#include "temporalis/interval_set.hpp"

#include <algorithm>

namespace temporalis {

namespace {

// Runs touch if their union is a single run over Z ([0,2] and [3,5] touch).
bool touches_or_overlaps(const Interval &a, const Interval &b) {
  // assumes a.lo <= b.lo
  if (a.hi_infinite())
    return true;
  return time_add(a.hi(), 1) >= b.lo();
}

} // namespace

IntervalSet IntervalSet::all() { return of(Interval::all()); }

IntervalSet IntervalSet::of(const Interval &iv) {
  IntervalSet s;
  s.runs_.push_back(iv);
  return s;
}

IntervalSet IntervalSet::coalesce(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end());
  IntervalSet s;
  for (const Interval &iv : intervals) {
    if (!s.runs_.empty() && touches_or_overlaps(s.runs_.back(), iv)) {
      Interval &last = s.runs_.back();
      if (iv.hi() > last.hi())
        last = Interval::make(last.lo(), true, iv.hi(), true);
    } else {
      s.runs_.push_back(iv);
    }
  }
  return s;
}

bool IntervalSet::contains(Time t) const {
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), t,
      [](Time v, const Interval &iv) { return v < iv.lo(); });
  if (it == runs_.begin())
    return false;
  return std::prev(it)->contains(t);
}

bool IntervalSet::contains(const Interval &iv) const {
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), iv.lo(),
      [](Time v, const Interval &run) { return v < run.lo(); });
  if (it == runs_.begin())
    return false;
  return std::prev(it)->contains(iv);
}

void IntervalSet::add(const Interval &iv) {
  std::vector<Interval> v = runs_;
  v.push_back(iv);
  *this = coalesce(std::move(v));
}

IntervalSet IntervalSet::unite(const IntervalSet &other) const {
  std::vector<Interval> v = runs_;
  v.insert(v.end(), other.runs_.begin(), other.runs_.end());
  return coalesce(std::move(v));
}

bool IntervalSet::subset_of(const IntervalSet &other) const {
  for (const Interval &run : runs_)
    if (!other.contains(run))
      return false;
  return true;
}

std::optional<std::pair<Time, Time>> IntervalSet::finite_hull() const {
  std::optional<std::pair<Time, Time>> hull;
  for (const Interval &run : runs_) {
    for (Time v : {run.lo(), run.hi()}) {
      if (!is_finite(v))
        continue;
      if (!hull)
        hull = {v, v};
      else {
        hull->first = std::min(hull->first, v);
        hull->second = std::max(hull->second, v);
      }
    }
  }
  return hull;
}

std::string IntervalSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i)
      s += ", ";
    s += runs_[i].to_string();
  }
  return s + "}";
}

} // namespace temporalis
