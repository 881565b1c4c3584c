#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "tamebr/errors.hpp"

namespace tamebr {

using i64 = std::int64_t;
using i128 = __int128;

// Overflow-checked 64-bit helpers. All exact arithmetic in the library goes
// through these; anything leaving the i64 range throws instead of wrapping.
inline i64 checked_cast(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
    throw OverflowError("integer value exceeds 64-bit exact range");
  }
  return static_cast<i64>(v);
}

inline i64 checked_add(i64 a, i64 b) { return checked_cast(i128(a) + i128(b)); }
inline i64 checked_sub(i64 a, i64 b) { return checked_cast(i128(a) - i128(b)); }
inline i64 checked_mul(i64 a, i64 b) { return checked_cast(i128(a) * i128(b)); }
inline i64 checked_neg(i64 a) { return checked_cast(-i128(a)); }

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = checked_neg(a);
  if (b < 0) b = checked_neg(b);
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i64 g = gcd_i64(a, b);
  return checked_mul(a < 0 ? -a : a, (b < 0 ? -b : b) / g);
}

// Exact rational number with canonical representation: lowest terms,
// positive denominator. Zero is 0/1.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(i64 n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(i64 n, i64 d) : num_(n), den_(d) { normalize(); }

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rat operator-() const { return Rat(checked_neg(num_), den_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    i64 g = gcd_i64(a.den_, b.den_);
    i64 db = b.den_ / g;
    i64 n = checked_add(checked_mul(a.num_, db), checked_mul(b.num_, a.den_ / g));
    return Rat(n, checked_mul(a.den_, db));
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    i64 g1 = gcd_i64(a.num_, b.den_);
    i64 g2 = gcd_i64(b.num_, a.den_);
    return Rat(checked_mul(a.num_ / g1, b.num_ / g2),
               checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw Error("division of rational by zero");
    return a * Rat(b.den_, b.num_);
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    i128 lhs = i128(a.num_) * i128(b.den_);
    i128 rhs = i128(b.num_) * i128(a.den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Largest integer <= value.
  i64 floor() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) q -= 1;
    return q;
  }

  // Representative of the class mod 1 lying in [0, 1).
  Rat frac() const { return *this - Rat(floor()); }

  // Canonical text form "num/den", always with the denominator.
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a/b" or a bare integer "a".
  static Rat parse(std::string_view s);

 private:
  i64 num_ = 0;
  i64 den_ = 1;

  void normalize() {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    i64 g = gcd_i64(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }
};

inline Rat Rat::parse(std::string_view s) {
  auto parse_int = [](std::string_view t) -> i64 {
    if (t.empty()) throw ParseError("empty integer in rational literal");
    bool neg = false;
    size_t i = 0;
    if (t[0] == '-' || t[0] == '+') {
      neg = (t[0] == '-');
      i = 1;
    }
    if (i == t.size()) throw ParseError("sign without digits in rational literal");
    i128 v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') {
        throw ParseError(std::string("bad digit in rational literal: '") +
                         std::string(t) + "'");
      }
      v = v * 10 + (t[i] - '0');
      if (v > i128(INT64_MAX) + 1) throw OverflowError("rational literal too large");
    }
    return checked_cast(neg ? -v : v);
  };
  size_t slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

inline Rat frac_mod1(const Rat& r) { return r.frac(); }

// Order of r + Z inside Q/Z, i.e. the denominator of its reduced class.
inline i64 order_mod1(const Rat& r) { return r.frac().den(); }

inline i64 vp(i64 n, i64 p) {
  if (n == 0) throw Error("p-adic valuation of zero");
  if (n < 0) n = -n;
  i64 v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline i64 ipow(i64 base, i64 exp) {
  i64 r = 1;
  for (i64 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Integer square root of a perfect square; throws otherwise.
inline i64 exact_isqrt(i64 n) {
  if (n < 0) throw Error("square root of negative integer");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) {
    throw StructureError("expected a perfect square, got " + std::to_string(n));
  }
  return r;
}

inline bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

}  // namespace tamebr
