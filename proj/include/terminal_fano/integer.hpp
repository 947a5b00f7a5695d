#pragma once

// Exact integer arithmetic used by every algorithm in the library.
//
// Algorithms are templates over an integer type. They are first run with
// CheckedInt (a 64-bit integer whose operators throw on overflow) and, if an
// overflow is reported, rerun with BigInt. Results never wrap silently.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace terminal_fano {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by intent

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_add_overflow(x.v_, y.v_, &r)) throw overflow_error("int64 addition overflow");
    return r;
  }
  friend CheckedInt operator-(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x.v_, y.v_, &r)) throw overflow_error("int64 subtraction overflow");
    return r;
  }
  friend CheckedInt operator*(CheckedInt x, CheckedInt y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x.v_, y.v_, &r)) throw overflow_error("int64 multiplication overflow");
    return r;
  }
  friend CheckedInt operator/(CheckedInt x, CheckedInt y) {
    if (y.v_ == 0) throw std::domain_error("integer division by zero");
    if (x.v_ == std::numeric_limits<std::int64_t>::min() && y.v_ == -1)
      throw overflow_error("int64 division overflow");
    return x.v_ / y.v_;
  }
  friend CheckedInt operator%(CheckedInt x, CheckedInt y) {
    if (y.v_ == 0) throw std::domain_error("integer division by zero");
    if (y.v_ == -1) return 0;
    return x.v_ % y.v_;
  }
  CheckedInt operator-() const {
    if (v_ == std::numeric_limits<std::int64_t>::min()) throw overflow_error("int64 negation overflow");
    return -v_;
  }

  CheckedInt& operator+=(CheckedInt o) { return *this = *this + o; }
  CheckedInt& operator-=(CheckedInt o) { return *this = *this - o; }
  CheckedInt& operator*=(CheckedInt o) { return *this = *this * o; }
  CheckedInt& operator/=(CheckedInt o) { return *this = *this / o; }
  CheckedInt& operator%=(CheckedInt o) { return *this = *this % o; }

  friend constexpr bool operator==(CheckedInt, CheckedInt) = default;
  friend constexpr auto operator<=>(CheckedInt, CheckedInt) = default;

 private:
  std::int64_t v_ = 0;
};

inline std::string to_string(CheckedInt x) { return std::to_string(x.value()); }

template <class Int>
Int abs_of(const Int& x) {
  return x < Int(0) ? Int(-x) : x;
}

template <class Int>
int sign_of(const Int& x) {
  return (Int(0) < x) - (x < Int(0));
}

/// Non-negative gcd; gcd(0, x) = |x|.
template <class Int>
Int gcd_of(Int x, Int y) {
  x = abs_of(x);
  y = abs_of(y);
  while (y != Int(0)) {
    Int r = x % y;
    x = y;
    y = r;
  }
  return x;
}

/// Representative of x modulo m in [0, m); m > 0.
template <class Int>
Int floor_mod(const Int& x, const Int& m) {
  Int r = x % m;
  return r < Int(0) ? Int(r + m) : r;
}

/// floor(x / m); m > 0.
template <class Int>
Int floor_div(const Int& x, const Int& m) {
  Int q = x / m;
  if (q * m > x) q -= Int(1);
  return q;
}

/// Returns (g, s, t) with s*x + t*y = g = gcd(x, y) >= 0.
template <class Int>
std::tuple<Int, Int, Int> ext_gcd(const Int& x, const Int& y) {
  Int r0 = x, r1 = y;
  Int s0 = 1, s1 = 0;
  Int t0 = 0, t1 = 1;
  while (r1 != Int(0)) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    Int t2 = t0 - q * t1;
    r0 = r1, r1 = r2;
    s0 = s1, s1 = s2;
    t0 = t1, t1 = t2;
  }
  if (r0 < Int(0)) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

inline std::int64_t to_i64(CheckedInt x) { return x.value(); }
inline std::int64_t to_i64(std::int64_t x) { return x; }
inline std::int64_t to_i64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw overflow_error("value does not fit in int64: " + x.str());
  return static_cast<std::int64_t>(x);
}

inline double to_double(CheckedInt x) { return static_cast<double>(x.value()); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

/// Runs f.template operator()<CheckedInt>() and, if that overflows,
/// f.template operator()<BigInt>().
template <class F>
auto with_widening(F&& f) {
  try {
    return f.template operator()<CheckedInt>();
  } catch (const overflow_error&) {
    return f.template operator()<BigInt>();
  }
}

}  // namespace terminal_fano
