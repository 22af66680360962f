#ifndef GNLIE_NUMBER_HPP
#define GNLIE_NUMBER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace gnlie {

/// Numeric constant: exact rational (int64 num/den) while it fits, with a
/// silent fallback to double once any operation overflows. Exactness is what
/// lets residuals that are mathematically zero fold to a literal zero.
class Number {
 public:
  Number() : exact_(true), num_(0), den_(1), val_(0.0) {}

  static Number integer(long long n) { return Number(n, 1); }

  static Number rational(long long num, long long den) {
    if (den == 0) return real(std::numeric_limits<double>::quiet_NaN());
    return Number(num, den);
  }

  static Number real(double v) {
    Number n;
    n.exact_ = false;
    n.val_ = v;
    return n;
  }

  bool exact() const { return exact_; }
  long long num() const { return num_; }
  long long den() const { return den_; }
  double value() const { return exact_ ? static_cast<double>(num_) / static_cast<double>(den_) : val_; }

  bool is_zero() const { return exact_ ? num_ == 0 : val_ == 0.0; }
  bool is_one() const { return exact_ ? (num_ == 1 && den_ == 1) : val_ == 1.0; }
  bool is_integer() const { return exact_ && den_ == 1; }
  bool positive() const { return value() > 0.0; }

  bool same(const Number& o) const {
    if (exact_ != o.exact_) return false;
    if (exact_) return num_ == o.num_ && den_ == o.den_;
    return val_ == o.val_;  // no NaNs are ever constructed by fold rules
  }

  Number operator-() const {
    if (!exact_) return real(-val_);
    long long n;
    if (__builtin_sub_overflow(0LL, num_, &n)) return real(-value());
    return Number(n, den_, no_normalize{});
  }

  Number operator+(const Number& o) const {
    if (exact_ && o.exact_) {
      long long g = std::gcd(den_, o.den_);
      long long lhs, rhs, s, d;
      // num*(o.den/g) + o.num*(den/g), over den/g*o.den
      if (!__builtin_mul_overflow(num_, o.den_ / g, &lhs) &&
          !__builtin_mul_overflow(o.num_, den_ / g, &rhs) &&
          !__builtin_add_overflow(lhs, rhs, &s) &&
          !__builtin_mul_overflow(den_ / g, o.den_, &d))
        return Number(s, d);
    }
    return real(value() + o.value());
  }

  Number operator-(const Number& o) const { return *this + (-o); }

  Number operator*(const Number& o) const {
    if (exact_ && o.exact_) {
      long long g1 = std::gcd(std::abs(num_), o.den_);
      long long g2 = std::gcd(std::abs(o.num_), den_);
      long long n, d;
      if (!__builtin_mul_overflow(num_ / g1, o.num_ / g2, &n) &&
          !__builtin_mul_overflow(den_ / g2, o.den_ / g1, &d))
        return Number(n, d);
    }
    return real(value() * o.value());
  }

  Number operator/(const Number& o) const {
    if (exact_ && o.exact_ && o.num_ != 0) {
      Number inv(o.den_, o.num_, no_normalize{});
      inv.normalize();
      return *this * inv;
    }
    return real(value() / o.value());
  }

  /// Exact integer power when representable; double otherwise.
  Number pow_int(long long e) const {
    if (!exact_) return real(std::pow(val_, static_cast<double>(e)));
    if (e == 0) return integer(1);
    bool invert = e < 0;
    unsigned long long k = invert ? -(unsigned long long)e : (unsigned long long)e;
    Number base = *this, acc = integer(1);
    while (k != 0) {
      if (k & 1ULL) {
        acc = acc * base;
        if (!acc.exact_) return real(std::pow(value(), static_cast<double>(e)));
      }
      k >>= 1;
      if (k != 0) {
        base = base * base;
        if (!base.exact_) return real(std::pow(value(), static_cast<double>(e)));
      }
    }
    if (invert) {
      if (acc.num_ == 0) return real(std::pow(value(), static_cast<double>(e)));
      Number inv(acc.den_, acc.num_, no_normalize{});
      inv.normalize();
      return inv;
    }
    return acc;
  }

  /// Exact square root when the rational is a perfect square; nullopt-style
  /// bool return otherwise.
  bool exact_sqrt(Number* out) const {
    if (!exact_ || num_ < 0) return false;
    long long rn = isqrt(num_), rd = isqrt(den_);
    if (rn < 0 || rd < 0) return false;
    *out = Number(rn, rd, no_normalize{});
    return true;
  }

  /// Printed so that reparsing reproduces the identical Number: pure digits
  /// for exact integers, "n/d" for rationals, and a form containing '.' or
  /// 'e' for doubles (the parser classifies those as inexact).
  std::string str() const {
    char buf[64];
    if (exact_) {
      if (den_ == 1) {
        std::snprintf(buf, sizeof buf, "%lld", num_);
        return buf;
      }
      std::snprintf(buf, sizeof buf, "%lld/%lld", num_, den_);
      return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", val_);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
  }

 private:
  struct no_normalize {};
  Number(long long n, long long d) : exact_(true), num_(n), den_(d), val_(0.0) { normalize(); }
  Number(long long n, long long d, no_normalize) : exact_(true), num_(n), den_(d), val_(0.0) {}

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  static long long isqrt(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
      if (c * c == v) return c;
    return -1;
  }

  bool exact_;
  long long num_, den_;
  double val_;
};

}  // namespace gnlie

#endif
