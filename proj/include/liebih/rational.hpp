#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cctype>
#include <cmath>
#include <compare>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "liebih/error.hpp"

namespace liebih {

/// Exact rational scalar used by the exact verification mode.
///
/// Wraps boost's arbitrary-precision rational with expression templates
/// disabled so that it can be used as an Eigen scalar.
class Rational {
 public:
  using Rep = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                            boost::multiprecision::et_off>;
  using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

  Rational() = default;
  Rational(int v) : v_(v) {}        // NOLINT(google-explicit-constructor)
  Rational(long v) : v_(v) {}       // NOLINT(google-explicit-constructor)
  Rational(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    v_ = Rep(num);
    v_ /= Rep(den);
  }
  explicit Rational(Rep v) : v_(std::move(v)) {}

  /// Exact binary value of a finite double.
  static Rational from_double(double d) {
    if (!std::isfinite(d)) throw ValidationError("non-finite value cannot be made rational");
    int exp = 0;
    const double mant = std::frexp(d, &exp);
    // 53 significant bits fit in an int64 after scaling.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rep r(scaled);
    exp -= 53;
    Rep two(2);
    Rep p(1);
    for (int i = 0; i < std::abs(exp); ++i) p *= two;
    if (exp >= 0) r *= p;
    else r /= p;
    return Rational(r);
  }

  /// Parses "p/q", an integer, or a finite decimal ("0.125", "-3e-2").
  static Rational parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ValidationError("empty rational literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Rational num = parse_decimal(s.substr(0, slash));
      const Rational den = parse_decimal(s.substr(slash + 1));
      if (den.is_zero()) throw ValidationError("rational literal '" + s + "' has zero denominator");
      return num / den;
    }
    return parse_decimal(s);
  }

  [[nodiscard]] const Rep& rep() const { return v_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] double to_double() const { return v_.convert_to<double>(); }
  [[nodiscard]] Int numerator() const { return boost::multiprecision::numerator(v_); }
  [[nodiscard]] Int denominator() const { return boost::multiprecision::denominator(v_); }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os << numerator();
    if (denominator() != 1) os << '/' << denominator();
    return os.str();
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ValidationError("exact division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational operator+() const { return *this; }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ == b.v_) return std::strong_ordering::equal;
    return std::strong_ordering::greater;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  static Rational parse_decimal(const std::string& s) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
    Rep value(0);
    Rep scale(1);
    bool any_digit = false;
    bool after_point = false;
    for (; i < s.size(); ++i) {
      const char ch = s[i];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        value = value * 10 + (ch - '0');
        if (after_point) scale *= 10;
        any_digit = true;
      } else if (ch == '.' && !after_point) {
        after_point = true;
      } else {
        break;
      }
    }
    if (!any_digit) throw ValidationError("malformed rational literal '" + s + "'");
    if (i < s.size()) {
      if (s[i] != 'e' && s[i] != 'E') throw ValidationError("malformed rational literal '" + s + "'");
      ++i;
      int exponent = 0;
      try {
        std::size_t used = 0;
        exponent = std::stoi(s.substr(i), &used);
        if (i + used != s.size()) throw ValidationError("malformed exponent in '" + s + "'");
      } catch (const std::logic_error&) {
        throw ValidationError("malformed exponent in '" + s + "'");
      }
      for (int k = 0; k < std::abs(exponent); ++k) {
        if (exponent > 0) value *= 10;
        else scale *= 10;
      }
    }
    Rep r = value / scale;
    return Rational(negative ? Rep(-r) : r);
  }

  Rep v_{0};
};

inline Rational abs(const Rational& q) { return q < Rational(0) ? -q : q; }
inline Rational abs2(const Rational& q) { return q * q; }
inline Rational conj(const Rational& q) { return q; }
inline Rational real(const Rational& q) { return q; }
inline Rational imag(const Rational&) { return Rational(0); }
inline bool isfinite(const Rational&) { return true; }
inline bool isnan(const Rational&) { return false; }
inline bool isinf(const Rational&) { return false; }

}  // namespace liebih

namespace Eigen {

template <>
struct NumTraits<liebih::Rational> : GenericNumTraits<liebih::Rational> {
  using Real = liebih::Rational;
  using NonInteger = liebih::Rational;
  using Nested = liebih::Rational;
  using Literal = liebih::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8
  };
  static liebih::Rational epsilon() { return liebih::Rational(0); }
  static liebih::Rational dummy_precision() { return liebih::Rational(0); }
  static liebih::Rational highest() { return liebih::Rational(1000000000000LL); }
  static liebih::Rational lowest() { return liebih::Rational(-1000000000000LL); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
