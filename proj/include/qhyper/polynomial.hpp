#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qhyper/scalar.hpp"

namespace qhyper {

/// Polynomial in the monomial basis: coeffs()[j] multiplies x^j. Trailing
/// zero coefficients are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  /// slope * x + intercept
  static Polynomial linear(const Rational& slope, const Rational& intercept);

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; the zero polynomial reports 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  Rational coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Rational(0); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace qhyper
