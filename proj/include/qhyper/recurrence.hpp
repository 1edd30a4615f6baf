#pragma once

// Three-term recurrence data for normalized polynomial families
//
//   P_0 = 1,  P_1 = (x - b_0) / a_0,
//   P_1 P_n = a_n P_{n+1} + b_n P_n + c_n P_{n-1}   (n >= 1),
//
// with a_n + b_n + c_n = 1 and P_n(1) = 1. The little q-Legendre family is
// the primary object; Chebyshev (first kind), ultraspherical with parameter
// -1/4 and Legendre are provided for recurrence-level comparison only.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/polynomial.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

enum class Family { LittleQLegendre, Chebyshev1, UltrasphericalMinusQuarter, Legendre };

struct RecurrenceTriple {
  Rational a;
  Rational b;
  Rational c;
};

/// Shared, immutable handle to a family's recurrence coefficients. Triples
/// are memoized; copies of the handle share the memo table.
class CoeffProvider {
 public:
  static CoeffProvider little_q_legendre(const QParam& q);
  static CoeffProvider chebyshev1();
  static CoeffProvider ultraspherical_m14();
  static CoeffProvider legendre();

  Family family() const noexcept;
  /// The q parameter; throws std::logic_error for families without one.
  const QParam& q() const;
  bool has_q() const noexcept;
  std::string name() const;

  /// (a_n, b_n, c_n). The returned reference stays valid while any copy of
  /// this provider is alive.
  const RecurrenceTriple& operator()(std::size_t n) const;

 private:
  struct State;
  explicit CoeffProvider(std::shared_ptr<const State> state);
  std::shared_ptr<const State> state_;
};

RecurrenceTriple coeffs(const CoeffProvider& provider, std::size_t n);

/// Haar weights h(0) = 1, h(1) = 1/c_1, h(n+1) = h(n) a_n / c_{n+1}.
class HaarWeights {
 public:
  explicit HaarWeights(CoeffProvider provider);

  const CoeffProvider& provider() const noexcept { return provider_; }
  const Rational& operator()(std::size_t n) const;

 private:
  struct State;
  CoeffProvider provider_;
  std::shared_ptr<const State> state_;
};

Rational haar_weight(const HaarWeights& hw, std::size_t n);

/// Closed form h(n) = (1 - q^{2n+1}) / (q^n (1 - q)) of the little q-Legendre
/// Haar weights.
Rational haar_weight_closed_form(const QParam& q, std::size_t n);

/// Closed form of sum_{k<=n} h(k) for little q-Legendre:
/// [1 - q^{n+1}(2 - q^n - q^{n+1}) / (1 - q^{2n+1})] h(n) / (1 - q).
Rational haar_partial_sum_closed_form(const QParam& q, std::size_t n);

/// P_n(x) by forward recurrence.
Rational eval_poly(const CoeffProvider& provider, std::size_t n, const Rational& x);

/// [P_0(x), ..., P_{n_max}(x)] in one forward pass.
std::vector<Rational> eval_poly_sequence(const CoeffProvider& provider, std::size_t n_max,
                                         const Rational& x);

/// Little q-Legendre P_n(x) from the terminating basic hypergeometric sum
///   sum_k (q^{-n};q)_k (q^{n+1};q)_k / (q;q)_k^2 * (q - q x)^k.
/// Independent of the recurrence path.
Rational eval_poly_phi(const QParam& q, std::size_t n, const Rational& x);

/// Support point 1 - q^m of the orthogonality measure.
Rational spectral_point(const QParam& q, std::size_t m);

/// mu({1 - q^n}) = q^n (1 - q).
Rational mu_mass(const QParam& q, std::size_t n);

/// int x^j dmu = sum_i C(j,i) (-1)^i (1 - q) / (1 - q^{i+1}).
Rational mu_moment(const QParam& q, std::size_t j);

/// Memoized moments of the little q-Legendre measure with exact polynomial
/// integration. Safe for concurrent use.
class MuMoments {
 public:
  explicit MuMoments(QParam q);

  const QParam& q() const noexcept { return q_; }
  const Rational& operator()(std::size_t j) const;
  Rational integrate(const Polynomial& f) const;

 private:
  struct State;
  QParam q_;
  std::shared_ptr<const State> state_;
};

/// Memoized monomial-basis expansions of P_n for a provider.
class MonomialTable {
 public:
  explicit MonomialTable(CoeffProvider provider);

  const CoeffProvider& provider() const noexcept { return provider_; }
  const Polynomial& operator()(std::size_t n) const;

 private:
  struct State;
  CoeffProvider provider_;
  std::shared_ptr<const State> state_;
};

}  // namespace qhyper
