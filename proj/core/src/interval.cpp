#include "refclass/interval.hpp"

#include <stdexcept>

namespace refclass {

Interval::Interval(Rational lo, Rational hi) : lo_(lo), hi_(hi) {
  if (lo_ < Rational(0) || hi_ > Rational(1) || hi_ < lo_) {
    throw std::invalid_argument("malformed statistical interval [" + lo.str() +
                                ", " + hi.str() + "]");
  }
}

std::string Interval::str() const {
  if (is_point()) return lo_.str();
  return "[" + lo_.str() + ", " + hi_.str() + "]";
}

bool differs(const Interval& x, const Interval& y) {
  return !x.contains(y) && !y.contains(x);
}

bool stronger(const Interval& x, const Interval& y) {
  return y.contains(x) && x != y;
}

Interval cover(std::span<const Interval> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("cover of empty interval set");
  }
  Rational lo = xs.front().lo();
  Rational hi = xs.front().hi();
  for (const Interval& x : xs.subspan(1)) {
    lo = min(lo, x.lo());
    hi = max(hi, x.hi());
  }
  return Interval(lo, hi);
}

}  // namespace refclass
