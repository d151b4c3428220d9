#include "refclass/rational.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

namespace refclass {

namespace {

using Int128 = __int128;

std::int64_t narrow(Int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduces in 128-bit space first so intermediates that shrink back into
// 64-bit range do not spuriously overflow.
Rational make_reduced(Int128 num, Int128 den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

bool parse_int64(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  auto first = text.data();
  auto last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Int128 n = num;
  Int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
  }

  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string_view::npos && dot != std::string_view::npos) {
    return std::nullopt;
  }

  std::int64_t num = 0;
  std::int64_t den = 1;
  if (slash != std::string_view::npos) {
    if (!parse_int64(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_int64(text.substr(slash + 1), den)) return std::nullopt;
    if (den <= 0 || num < 0) return std::nullopt;
  } else if (dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty() || frac.empty() || frac.size() > 18) return std::nullopt;
    std::int64_t whole_v = 0;
    std::int64_t frac_v = 0;
    if (!parse_int64(whole, whole_v)) return std::nullopt;
    if (!parse_int64(frac, frac_v)) return std::nullopt;
    if (whole_v < 0 || frac_v < 0) return std::nullopt;
    Int128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    try {
      Rational r = make_reduced(Int128(whole_v) * scale + frac_v, scale);
      return negative ? -r : r;
    } catch (const std::overflow_error&) {
      return std::nullopt;
    }
  } else {
    if (!parse_int64(text, num)) return std::nullopt;
    if (num < 0) return std::nullopt;
  }
  Rational r(num, den);
  return negative ? -r : r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& rhs) const {
  return make_reduced(Int128(num_) * rhs.den_ + Int128(rhs.num_) * den_,
                      Int128(den_) * rhs.den_);
}

Rational Rational::operator-(const Rational& rhs) const {
  return *this + (-rhs);
}

Rational Rational::operator*(const Rational& rhs) const {
  return make_reduced(Int128(num_) * rhs.num_, Int128(den_) * rhs.den_);
}

Rational Rational::operator/(const Rational& rhs) const {
  if (rhs.num_ == 0) {
    throw std::domain_error("rational division by zero");
  }
  return make_reduced(Int128(num_) * rhs.den_, Int128(den_) * rhs.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
  Int128 lhs_v = Int128(num_) * rhs.den_;
  Int128 rhs_v = Int128(rhs.num_) * den_;
  if (lhs_v < rhs_v) return std::strong_ordering::less;
  if (lhs_v > rhs_v) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational::Decimal Rational::decimal(int max_frac_digits) const {
  std::int64_t n = num_;
  std::string sign;
  if (n < 0) {
    sign = "-";
    n = -n;
  }
  std::int64_t whole = n / den_;
  Int128 rem = n % den_;
  if (rem == 0) {
    return {sign + std::to_string(whole), true};
  }

  std::string frac;
  bool exact = false;
  for (int i = 0; i < max_frac_digits; ++i) {
    rem *= 10;
    frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den_)));
    rem %= den_;
    if (rem == 0) {
      exact = true;
      break;
    }
  }
  if (!exact && rem * 10 / den_ >= 5) {
    // Round half-up on the first dropped digit, propagating carries.
    int i = static_cast<int>(frac.size()) - 1;
    for (; i >= 0; --i) {
      if (frac[i] != '9') {
        ++frac[i];
        break;
      }
      frac[i] = '0';
    }
    if (i < 0) ++whole;
  }
  return {sign + std::to_string(whole) + "." + frac, exact};
}

}  // namespace refclass
