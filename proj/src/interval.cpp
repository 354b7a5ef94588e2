#include "temporalis/interval.hpp"

namespace temporalis {

Time time_add(Time a, Time b) {
  if (a == kNegInf || b == kNegInf) {
    if (a == kPosInf || b == kPosInf)
      throw InvariantError("time_add: inf + -inf");
    return kNegInf;
  }
  if (a == kPosInf || b == kPosInf)
    return kPosInf;
  return a + b;
}

Time time_sub(Time a, Time b) {
  if (b == kNegInf)
    return time_add(a, kPosInf);
  if (b == kPosInf)
    return time_add(a, kNegInf);
  return time_add(a, -b);
}

std::string time_to_string(Time t) {
  if (t == kNegInf)
    return "-inf";
  if (t == kPosInf)
    return "inf";
  return std::to_string(t);
}

std::optional<Interval> Interval::try_make(Time lo, bool lo_closed, Time hi,
                                           bool hi_closed) {
  if (lo == kPosInf || hi == kNegInf)
    return std::nullopt;
  if (is_finite(lo) && !lo_closed)
    lo = lo + 1;
  if (is_finite(hi) && !hi_closed)
    hi = hi - 1;
  if (is_finite(lo) && is_finite(hi) && lo > hi)
    return std::nullopt;
  return Interval(lo, hi);
}

Interval Interval::make(Time lo, bool lo_closed, Time hi, bool hi_closed) {
  auto v = try_make(lo, lo_closed, hi, hi_closed);
  if (!v)
    throw InputError("empty interval " + std::string(lo_closed ? "[" : "(") +
                     time_to_string(lo) + "," + time_to_string(hi) +
                     std::string(hi_closed ? "]" : ")") +
                     " contains no integer");
  return *v;
}

Time Interval::length() const {
  if (!bounded())
    throw InvariantError("length() of an unbounded interval");
  return hi_ - lo_;
}

Interval Interval::plus(const Interval &rho) const {
  return Interval(time_add(lo_, rho.lo_), time_add(hi_, rho.hi_));
}

Interval Interval::minus(const Interval &rho) const {
  return Interval(time_sub(lo_, rho.hi_), time_sub(hi_, rho.lo_));
}

Interval Interval::shifted(Time delta) const {
  return Interval(time_add(lo_, delta), time_add(hi_, delta));
}

std::optional<Interval> Interval::intersect(const Interval &other) const {
  Time lo = lo_ > other.lo_ ? lo_ : other.lo_;
  Time hi = hi_ < other.hi_ ? hi_ : other.hi_;
  if (is_finite(lo) && is_finite(hi) && lo > hi)
    return std::nullopt;
  if (lo == kPosInf || hi == kNegInf)
    return std::nullopt;
  return Interval(lo, hi);
}

std::string Interval::to_string() const {
  std::string s = lo_infinite() ? "(" : "[";
  s += time_to_string(lo_);
  s += ",";
  s += time_to_string(hi_);
  s += hi_infinite() ? ")" : "]";
  return s;
}

} // namespace temporalis
