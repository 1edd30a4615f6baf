#pragma once

// Exact rational scalars, certified rational enclosures and q-Pochhammer
// symbols. Everything downstream is built on these three types.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qhyper {

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator). Immutable value semantics; every
/// operator returns a new canonical value.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Parses "p/r", "p" or "-p/r". Throws std::invalid_argument on malformed
  /// input or a zero denominator.
  static Rational parse(std::string_view text);

  const mpq_class& get() const noexcept { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  Rational abs() const;
  Rational inverse() const;

  /// Integer power; negative exponents invert (throws on 0^negative).
  Rational pow(long exponent) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p/r" (always with a denominator, "0/1" for zero).
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  /// Fixed-point decimal with exactly `digits` fractional digits, rounded
  /// half-to-even. Zero is never printed with a minus sign.
  std::string to_decimal(int digits) const;

  /// Size of numerator plus denominator in bits.
  std::size_t bits() const;

  /// Greatest dyadic rational k/2^bits that is <= *this.
  Rational floor_dyadic(unsigned bits) const;
  /// Least dyadic rational k/2^bits that is >= *this.
  Rational ceil_dyadic(unsigned bits) const;

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// The deformation parameter q, restricted to rationals in (0, 1).
class QParam {
 public:
  /// Throws std::invalid_argument unless 0 < q < 1.
  explicit QParam(Rational q);
  static QParam parse(std::string_view text);

  const Rational& value() const noexcept { return q_; }
  /// q^e for any integer e.
  Rational pow(long e) const { return q_.pow(e); }
  mpz_class numerator() const { return q_.numerator(); }
  mpz_class denominator() const { return q_.denominator(); }

  friend bool operator==(const QParam&, const QParam&) = default;

 private:
  Rational q_;
};

/// Two-sided rational interval [lo, hi] certified to contain a real number.
class Enclosure {
 public:
  Enclosure() = default;
  /// Throws std::invalid_argument if lo > hi.
  Enclosure(Rational lo, Rational hi);
  static Enclosure point(const Rational& v) { return Enclosure(v, v); }

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
  /// max(|lo|, |hi|).
  Rational magnitude() const;

  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Enclosure& e) const { return lo_ <= e.lo_ && e.hi_ <= hi_; }
  bool intersects(const Enclosure& e) const { return lo_ <= e.hi_ && e.lo_ <= hi_; }
  /// Strictly positive / negative over the whole interval.
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  friend Enclosure operator+(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator-(const Enclosure& x, const Enclosure& y);
  friend Enclosure operator*(const Enclosure& x, const Enclosure& y);
  /// Throws std::domain_error if y contains zero.
  friend Enclosure operator/(const Enclosure& x, const Enclosure& y);

  /// Widens the endpoints outward onto the dyadic grid 2^-bits. Keeps
  /// denominators bounded in long products without losing containment.
  Enclosure outward(unsigned bits) const;
  /// Intersection; throws std::domain_error if disjoint.
  Enclosure intersect(const Enclosure& e) const;
  Enclosure hull(const Enclosure& e) const;

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

enum class IntervalOp { Add, Sub, Mul, Div };
Enclosure enclosure_arith(const Enclosure& x, const Enclosure& y, IntervalOp op);

/// (a; q)_n = prod_{k=1}^{n} (1 - a q^{k-1}); the empty product is 1.
Rational q_pochhammer(const Rational& a, const QParam& q, std::size_t n);

/// (a; q)_inf for 0 <= a < 1, truncated after `terms` factors. The
/// remaining factors lie in [1 - a q^terms / (1 - q), 1]; the bound is
/// applied to the truncated product. Endpoints are kept on the dyadic grid
/// 2^-precision_bits. Throws std::invalid_argument unless 0 <= a < 1.
Enclosure q_pochhammer_inf(const Rational& a, const QParam& q, std::size_t terms,
                           unsigned precision_bits = 256);

/// As above, choosing the number of factors so that the width is at most
/// `tolerance` (plus the dyadic rounding slack).
Enclosure q_pochhammer_inf_tol(const Rational& a, const QParam& q, const Rational& tolerance,
                               unsigned precision_bits = 256);

/// Binomial coefficient as a Rational.
Rational binomial(std::size_t n, std::size_t k);

}  // namespace qhyper
