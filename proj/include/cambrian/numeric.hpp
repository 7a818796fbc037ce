#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "cambrian/errors.hpp"

namespace cambrian {

namespace detail {

// Coefficients stay well below 2^61 so that the nested sign test below can
// square twice: once into __int128, once into the 256-bit compare.
constexpr std::int64_t kCoeffMax = std::int64_t{1} << 61;

inline std::int64_t narrow_checked(__int128 v) {
  if (v > kCoeffMax || v < -kCoeffMax) {
    throw ArithmeticError("exact arithmetic: coefficient overflow");
  }
  return static_cast<std::int64_t>(v);
}

struct U256 {
  unsigned __int128 hi{0}, lo{0};
};

inline U256 square_u128(unsigned __int128 x) {
  const auto x0 = static_cast<std::uint64_t>(x);
  const auto x1 = static_cast<std::uint64_t>(x >> 64);
  U256 r;
  r.lo = static_cast<unsigned __int128>(x0) * x0;
  r.hi = static_cast<unsigned __int128>(x1) * x1;
  const unsigned __int128 mid = static_cast<unsigned __int128>(x0) * x1;
  for (int rep = 0; rep < 2; ++rep) {
    const unsigned __int128 old = r.lo;
    r.lo += mid << 64;
    r.hi += (mid >> 64) + (r.lo < old ? 1 : 0);
  }
  return r;
}

inline U256 shift_left_one(U256 v) {
  U256 r;
  r.hi = (v.hi << 1) | (v.lo >> 127);
  r.lo = v.lo << 1;
  return r;
}

inline int compare_u256(const U256& a, const U256& b) {
  if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
  if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
  return 0;
}

inline unsigned __int128 abs_u128(__int128 v) {
  return v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
}

// Exact sign of a + b*sqrt(2) for 128-bit a, b. The mixed-sign case compares
// a^2 with 2 b^2 in 256 bits; equality there would force a = b = 0.
inline int sign_sqrt2(__int128 a, __int128 b) {
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const U256 a2 = square_u128(abs_u128(a));
  const U256 b2 = shift_left_one(square_u128(abs_u128(b)));
  const int cmp = compare_u256(a2, b2);
  if (cmp == 0) throw ArithmeticError("exact arithmetic: impossible sqrt2 tie");
  return cmp > 0 ? sa : sb;
}

}  // namespace detail

// Exact element of the field Q(sqrt2, sqrt3), stored as
// (a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den with den > 0 and gcd = 1.
// All arithmetic is overflow-checked; comparisons are exact.
class Exact {
 public:
  Exact() = default;
  Exact(std::int64_t integer) : a_(integer) {}  // NOLINT: implicit by design

  static Exact of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                  std::int64_t den = 1) {
    Exact r;
    r.a_ = a;
    r.b_ = b;
    r.c_ = c;
    r.d_ = d;
    r.den_ = den;
    r.normalize();
    return r;
  }

  static Exact rational(std::int64_t num, std::int64_t den) { return of(num, 0, 0, 0, den); }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }

  friend Exact operator+(const Exact& x, const Exact& y) {
    Exact r;
    const __int128 dx = x.den_, dy = y.den_;
    r.a_ = detail::narrow_checked(static_cast<__int128>(x.a_) * dy + static_cast<__int128>(y.a_) * dx);
    r.b_ = detail::narrow_checked(static_cast<__int128>(x.b_) * dy + static_cast<__int128>(y.b_) * dx);
    r.c_ = detail::narrow_checked(static_cast<__int128>(x.c_) * dy + static_cast<__int128>(y.c_) * dx);
    r.d_ = detail::narrow_checked(static_cast<__int128>(x.d_) * dy + static_cast<__int128>(y.d_) * dx);
    r.den_ = detail::narrow_checked(dx * dy);
    r.normalize();
    return r;
  }

  friend Exact operator-(const Exact& x) {
    Exact r = x;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    r.c_ = -r.c_;
    r.d_ = -r.d_;
    return r;
  }

  friend Exact operator-(const Exact& x, const Exact& y) { return x + (-y); }

  // Multiplication in the basis {1, sqrt2, sqrt3, sqrt6}:
  // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2.
  friend Exact operator*(const Exact& x, const Exact& y) {
    const __int128 a1 = x.a_, b1 = x.b_, c1 = x.c_, d1 = x.d_;
    const __int128 a2 = y.a_, b2 = y.b_, c2 = y.c_, d2 = y.d_;
    Exact r;
    r.a_ = detail::narrow_checked(a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2);
    r.b_ = detail::narrow_checked(a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2));
    r.c_ = detail::narrow_checked(a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2));
    r.d_ = detail::narrow_checked(a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2);
    r.den_ = detail::narrow_checked(static_cast<__int128>(x.den_) * y.den_);
    r.normalize();
    return r;
  }

  Exact& operator+=(const Exact& y) { return *this = *this + y; }
  Exact& operator-=(const Exact& y) { return *this = *this - y; }
  Exact& operator*=(const Exact& y) { return *this = *this * y; }

  friend bool operator==(const Exact& x, const Exact& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Exact& x, const Exact& y) { return !(x == y); }

  // Exact sign, via x = (a + b*sqrt2) + (c + d*sqrt2)*sqrt3.
  int sign() const {
    if (is_zero()) return 0;
    const int sp = detail::sign_sqrt2(a_, b_);
    const int sq = detail::sign_sqrt2(c_, d_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Mixed: compare (a + b*sqrt2)^2 against 3 (c + d*sqrt2)^2.
    const __int128 a = a_, b = b_, c = c_, d = d_;
    const __int128 big_a = a * a + 2 * b * b - 3 * c * c - 6 * d * d;
    const __int128 big_b = 2 * a * b - 6 * c * d;
    const int s = detail::sign_sqrt2(big_a, big_b);
    if (s == 0) throw ArithmeticError("exact arithmetic: impossible sqrt3 tie");
    return s > 0 ? sp : sq;
  }

  double to_double() const {
    return (static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0) +
            static_cast<double>(c_) * std::sqrt(3.0) + static_cast<double>(d_) * std::sqrt(6.0)) /
           static_cast<double>(den_);
  }

 private:
  void normalize() {
    if (den_ == 0) throw ArithmeticError("exact arithmetic: zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    std::int64_t g = std::gcd(std::gcd(std::abs(a_), std::abs(b_)),
                              std::gcd(std::abs(c_), std::abs(d_)));
    g = std::gcd(g, den_);
    if (g > 1) {
      a_ /= g;
      b_ /= g;
      c_ /= g;
      d_ /= g;
      den_ /= g;
    }
    if (is_zero()) den_ = 1;
  }

  std::int64_t a_{0}, b_{0}, c_{0}, d_{0};
  std::int64_t den_{1};
};

// Scalar backend interface used by the Coxeter machinery. The exact backend
// covers bond labels {2, 3, 4, 6, infinity}; everything else runs on double
// under a fixed sign tolerance.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Exact> {
  static constexpr bool is_exact = true;

  static bool supports_label(int m) {
    return m == 0 || m == 1 || m == 2 || m == 3 || m == 4 || m == 6;
  }

  // Bilinear form entry -cos(pi/m); the label 0 encodes m = infinity.
  static Exact bond_form(int m) {
    switch (m) {
      case 0: return Exact(-1);
      case 1: return Exact(1);
      case 2: return Exact(0);
      case 3: return Exact::rational(-1, 2);
      case 4: return Exact::of(0, -1, 0, 0, 2);
      case 6: return Exact::of(0, 0, -1, 0, 2);
      default:
        throw ValidationError("bond label " + std::to_string(m) +
                              " is not exactly representable; use the floating-point backend");
    }
  }

  static int sign3(const Exact& v) { return v.sign(); }
  static double approx(const Exact& v) { return v.to_double(); }
};

// Sign tolerance for the floating-point backend. Values inside (-tau, tau)
// are treated as indeterminate and may never decide a root's sign.
constexpr double kSignTolerance = 1e-9;

template <>
struct ScalarOps<double> {
  static constexpr bool is_exact = false;

  static bool supports_label(int m) { return m >= 0; }

  static double bond_form(int m) {
    if (m == 0) return -1.0;
    return -std::cos(M_PI / static_cast<double>(m));
  }

  // Three-way sign with a dead zone: 0 means "too small to call". Callers
  // must not let a dead-zone value decide anything on its own.
  static int sign3(double v) {
    if (v > kSignTolerance) return 1;
    if (v < -kSignTolerance) return -1;
    return 0;
  }

  static double approx(double v) { return v; }
};

}  // namespace cambrian
