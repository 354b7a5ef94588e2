#ifndef TEMPORALIS_INTERVAL_HPP
#define TEMPORALIS_INTERVAL_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "temporalis/errors.hpp"

namespace temporalis {

// Time points live on the integer timeline. Two reserved values act as the
// infinite endpoints; arithmetic helpers below saturate on them.
using Time = long long;

constexpr Time kNegInf = std::numeric_limits<Time>::min();
constexpr Time kPosInf = std::numeric_limits<Time>::max();

inline bool is_finite(Time t) { return t != kNegInf && t != kPosInf; }

// Saturating addition; inf + finite = inf. inf + (-inf) is an invariant
// breach and never occurs on canonical intervals.
Time time_add(Time a, Time b);
Time time_sub(Time a, Time b);

std::string time_to_string(Time t);

// An integer interval in canonical form: finite endpoints are stored closed
// (a parsed "(1,4)" becomes [2,3]), open brackets survive only on +-inf.
// Always non-empty.
class Interval {
public:
  // Canonicalizes brackets over the integers. Returns nullopt when the
  // described set of integers is empty.
  static std::optional<Interval> try_make(Time lo, bool lo_closed, Time hi,
                                          bool hi_closed);
  // Same, but throws InputError on an empty interval.
  static Interval make(Time lo, bool lo_closed, Time hi, bool hi_closed);

  static Interval closed(Time lo, Time hi) { return make(lo, true, hi, true); }
  static Interval point(Time t) { return closed(t, t); }
  static Interval at_least(Time lo) { return make(lo, true, kPosInf, false); }
  static Interval at_most(Time hi) { return make(kNegInf, false, hi, true); }
  static Interval all() { return make(kNegInf, false, kPosInf, false); }

  Time lo() const { return lo_; }
  Time hi() const { return hi_; }

  bool lo_infinite() const { return lo_ == kNegInf; }
  bool hi_infinite() const { return hi_ == kPosInf; }
  bool bounded() const { return !lo_infinite() && !hi_infinite(); }
  bool punctual() const { return lo_ == hi_; }
  // Contains no negative time point (operator intervals require this).
  bool nonnegative() const { return !lo_infinite() && lo_ >= 0; }

  bool contains(Time t) const { return lo_ <= t && t <= hi_; }
  bool contains(const Interval &other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool intersects(const Interval &other) const {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }

  // hi - lo; only meaningful for bounded intervals.
  Time length() const;

  // Minkowski sum/difference used by shifted assertions: this + [a,b] and
  // this - [a,b], with saturating endpoints.
  Interval plus(const Interval &rho) const;
  Interval minus(const Interval &rho) const;
  Interval shifted(Time delta) const;

  std::optional<Interval> intersect(const Interval &other) const;

  // "[0,3]", "[2,inf)", "(-inf,5]", "(-inf,inf)"
  std::string to_string() const;

  friend bool operator==(const Interval &a, const Interval &b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }
  friend bool operator!=(const Interval &a, const Interval &b) {
    return !(a == b);
  }
  friend bool operator<(const Interval &a, const Interval &b) {
    return a.lo_ != b.lo_ ? a.lo_ < b.lo_ : a.hi_ < b.hi_;
  }

private:
  Interval(Time lo, Time hi) : lo_(lo), hi_(hi) {}
  Time lo_;
  Time hi_;
};

} // namespace temporalis

#endif
