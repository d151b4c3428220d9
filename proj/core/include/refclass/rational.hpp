#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace refclass {

// Exact rational on 64-bit components, always in canonical reduced form
// with a positive denominator. Intermediate products run through 128-bit
// arithmetic and throw std::overflow_error if a result does not fit;
// with the denominators this engine sees (statistics, small counts) that
// never triggers in practice.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "3", "14/55", "0.745" and an optional leading minus.
  // Decimals are read exactly: "0.8" becomes 4/5.
  static std::optional<Rational> parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& rhs) const;
  Rational operator-(const Rational& rhs) const;
  Rational operator*(const Rational& rhs) const;
  Rational operator/(const Rational& rhs) const;  // throws on rhs == 0

  bool operator==(const Rational& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
  }
  std::strong_ordering operator<=>(const Rational& rhs) const;

  // "14/55", or just "3" for integers.
  std::string str() const;

  // Decimal rendering. If the expansion terminates the exact digits are
  // returned and `exact` is true; otherwise the value is rounded half-up
  // to `max_frac_digits` digits and `exact` is false.
  struct Decimal {
    std::string digits;
    bool exact;
  };
  Decimal decimal(int max_frac_digits = 5) const;

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace refclass
