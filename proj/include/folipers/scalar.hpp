// Scalar kinds for the two numeric modes (exact rational / double), plus the
// extended value domain [0,inf] used by every distance in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace folipers {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

template <class T>
T abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
T scalar_from_int(long long v) {
  return T(v);
}

// Doubles are dyadic rationals, so this conversion is exact in both modes.
template <class T>
T scalar_from_double(double x) {
  if constexpr (is_rational_v<T>) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value in rational mode");
    return Rational(x);
  } else {
    return x;
  }
}

// Accepts "p/q", plain integers, and decimal literals ("-1.25", "3e-2").
inline Rational rational_from_string(std::string_view text) {
  using Int = boost::multiprecision::cpp_int;
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long exponent10 = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) --exponent10;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exponent10 += std::stoll(s.substr(pos + 1));
      break;
    } else {
      throw std::invalid_argument("bad number literal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad number literal: " + s);
  Int mantissa(digits.empty() ? "0" : digits);
  if (negative) mantissa = -mantissa;
  Rational r(mantissa);
  Int ten(10);
  if (exponent10 > 0) r *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(exponent10)));
  if (exponent10 < 0) r /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-exponent10)));
  return r;
}

template <class T>
T scalar_from_string(std::string_view text) {
  if constexpr (is_rational_v<T>) {
    return rational_from_string(text);
  } else {
    if (text.find('/') != std::string_view::npos)
      return rational_from_string(text).template convert_to<double>();
    std::size_t used = 0;
    double x = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("bad number literal: " + std::string(text));
    return x;
  }
}

// Shortest round-trippable decimal; keeps CLI output byte-deterministic.
inline std::string scalar_to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  double back = std::strtod(buf, nullptr);
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == back) return shorter;
  }
  return buf;
}
inline std::string scalar_to_string(const Rational& x) { return x.str(); }

// Nonnegative real extended with infinity. The arithmetic follows the
// bottleneck-distance conventions: inf - y = inf, inf - inf = 0, inf/2 = inf,
// min{c,inf} = c, max{c,inf} = inf.
template <class T>
class Extended {
 public:
  Extended() : inf_(false), value_{} {}
  Extended(T v) : inf_(false), value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static Extended infinity() {
    Extended e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  const T& value() const {
    if (inf_) throw std::logic_error("Extended: value() on infinity");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Extended& a, const Extended& b) { return a < b || a == b; }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator>=(const Extended& a, const Extended& b) { return b <= a; }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return infinity();
    return Extended(a.value_ + b.value_);
  }

  friend Extended max(const Extended& a, const Extended& b) { return a < b ? b : a; }
  friend Extended min(const Extended& a, const Extended& b) { return a < b ? a : b; }

  // |a - b| under the conventions above; infinity cancels against itself.
  friend Extended abs_diff(const Extended& a, const Extended& b) {
    if (a.inf_ && b.inf_) return Extended(T(0));
    if (a.inf_ || b.inf_) return infinity();
    return Extended(abs_value<T>(a.value_ - b.value_));
  }

  Extended half() const {
    if (inf_) return infinity();
    return Extended(value_ / T(2));
  }

  // c * x for a finite positive factor.
  friend Extended scale(const T& c, const Extended& x) {
    if (x.inf_) return infinity();
    return Extended(c * x.value_);
  }

  double as_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : to_double(value_);
  }

 private:
  bool inf_;
  T value_;
};

template <class T>
Extended<T> extended_from_double(double x) {
  if (std::isinf(x) && x > 0) return Extended<T>::infinity();
  return Extended<T>(scalar_from_double<T>(x));
}

}  // namespace folipers
