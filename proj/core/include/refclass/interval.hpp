#pragma once

#include <compare>
#include <span>
#include <string>

#include "refclass/rational.hpp"

namespace refclass {

// Closed rational subinterval of [0,1]. A point statistic is the
// degenerate interval [p,p], so exact and approximate statistical
// statements share one representation.
class Interval {
 public:
  Interval() : lo_(0), hi_(1) {}
  // Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  Interval(Rational lo, Rational hi);

  static Interval point(Rational p) { return Interval(p, p); }
  static Interval ignorance() { return Interval(Rational(0), Rational(1)); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  bool operator==(const Interval& rhs) const = default;
  auto operator<=>(const Interval& rhs) const = default;

  // "[2/5, 3/5]", or just "1/2" for a point.
  std::string str() const;

 private:
  Rational lo_;
  Rational hi_;
};

// Neither interval includes the other.
bool differs(const Interval& x, const Interval& y);

// x is a strict subset of y.
bool stronger(const Interval& x, const Interval& y);

// Smallest interval containing every member. Throws std::invalid_argument
// on empty input; the caller substitutes the ignorance interval when there
// is nothing to cover.
Interval cover(std::span<const Interval> xs);

}  // namespace refclass
