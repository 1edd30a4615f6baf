#pragma once

// Fourier transform on the spectrum {1 - q^m} ∪ {1}, the inverse Plancherel
// transform of polynomials, the derivative coefficients kappa_n, and the
// finite surrogates of the limit statements about P_n(1 - q^n) and p_n^4.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qhyper/characters.hpp"
#include "qhyper/hypergroup.hpp"
#include "qhyper/polynomial.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

/// A point of the spectrum: 1 - q^m, or 1 itself (m empty).
struct SpectrumPoint {
  std::optional<std::size_t> m;

  static SpectrumPoint at(std::size_t index) { return SpectrumPoint{index}; }
  static SpectrumPoint one() { return SpectrumPoint{}; }
  /// The real number this point stands for. 1 - q^m needs a q parameter.
  Rational value(const Hypergroup& hg) const;
};

/// f^(x) = sum_k f(k) P_k(x) h(k), exact for finitely supported f.
Rational fourier(const HSeq& f, const Rational& x);
Rational fourier(const HSeq& f, const SpectrumPoint& x);

struct PlancherelCheck {
  Rational lhs;   ///< ||f||_2^2
  Enclosure rhs;  ///< sum_{n<=N} f^(1-q^n)^2 q^n (1-q) + [0, ||f||_1^2 q^{N+1}]
  bool ok() const { return rhs.contains(lhs); }
};

/// Uses that |f^| <= ||f||_1 on the spectrum and that the mass of the
/// measure beyond 1 - q^N is q^{N+1} (the point 1 carries none).
PlancherelCheck plancherel_check(const HSeq& f, std::size_t n_trunc);

/// int F dmu via the exact moments.
Rational integrate(const Hypergroup& hg, const Polynomial& F);

/// P^{-1}(F)(k) = int F P_k dmu.
Rational inverse_plancherel_poly(const Hypergroup& hg, const Polynomial& F, std::size_t k);

/// The whole sequence P^{-1}(F); it vanishes beyond deg F.
HSeq inverse_plancherel_poly(const Hypergroup& hg, const Polynomial& F);

/// sum_n coeffs[n] P_n in the monomial basis.
Polynomial from_p_basis(const Hypergroup& hg, std::span<const Rational> coeffs);

/// kappa_n(k) = int P_n' P_k dmu for k < n, so that
/// P_n' = sum_{k<n} kappa_n(k) P_k h(k).
struct KappaSeq {
  std::size_t n = 0;
  std::vector<Rational> values;  ///< size n; kappa_0 is empty

  HSeq as_hseq(const Hypergroup& hg) const { return HSeq::from_dense(hg, values); }
};

KappaSeq kappa(const Hypergroup& hg, std::size_t n);

/// max_{m <= probe_max} |kappa_n * phi(m)|. For a finite phi the value is
/// exact and returned as a point enclosure. For a character the exact
/// prefix must reach index probe_max + n - 1, which is all the convolution
/// touches; otherwise std::invalid_argument.
Enclosure kappa_conv_sup(const Hypergroup& hg, std::size_t n, const HSeq& phi,
                         std::size_t probe_max);
Enclosure kappa_conv_sup(const Hypergroup& hg, std::size_t n, const TruncatedCharacter& phi,
                         std::size_t probe_max);

/// f_n(k) = P^{-1}(p_n^2)(k) = h(n) int P_n^2 P_k dmu.
Rational cesaro_fn(const Hypergroup& hg, std::size_t n, std::size_t k);
/// F_n(k) = (1/(n+1)) sum_{j<=n} f_j(k).
Rational cesaro_Fn(const Hypergroup& hg, std::size_t n, std::size_t k);

struct P4Integral {
  std::size_t n = 0;
  Rational integral;     ///< int p_n^4 dmu = h(n)^2 int P_n^4 dmu
  Rational ratio;        ///< integral / h(n)
  Rational lower_bound;  ///< (1 - q^{2n+1}) P_n(1-q^n)^4, never above ratio
};

P4Integral p4_integral(const Hypergroup& hg, std::size_t n);

/// Independent route: int P_n^4 dmu = sum_k g(n,n;k)^2 / h(k).
Rational p4_integral_by_linearization(const Hypergroup& hg, std::size_t n);

enum class TailRule {
  Leibniz,       ///< gamma_k decreasing from k = 0: alternating-series bracketing
  AbsoluteTail,  ///< gamma_k <= q^{k(3k+1)/2} / (q;q)_inf^3
};

struct QLimitResult {
  /// P_n(1 - q^n) for n = 0 .. n_probe.
  std::vector<Rational> lhs;
  /// (q;q)_inf sum_k (-1)^k gamma_k.
  Enclosure rhs;
  TailRule rule = TailRule::Leibniz;
  /// (q;q)_inf (gamma_0 - gamma_1), only under the Leibniz rule.
  std::optional<Enclosure> leibniz_lower_bound;
};

/// gamma_k = q^{k(3k+1)/2} / (q;q)_k^3.
Rational gamma_k(const QParam& q, std::size_t k);

/// True iff gamma_{k+1}/gamma_k = q^{3k+2}/(1-q^{k+1})^3 < 1 for every k,
/// which reduces to the k = 0 case q^2 < (1-q)^3.
bool gamma_decreasing(const QParam& q);

QLimitResult qlimit_identity(const QParam& q, std::size_t n_probe,
                             const Rational& tolerance = Rational(1, 1000000000));

/// The three finite identities relating P_n(1-q^n) to q-Pochhammer sums,
/// each evaluated exactly on both sides.
bool finite_identity_product_sum(const QParam& q, std::size_t n);
bool finite_identity_pochhammer(const QParam& q, std::size_t n, std::size_t k);
bool finite_identity_gamma_sum(const QParam& q, std::size_t n);

}  // namespace qhyper
