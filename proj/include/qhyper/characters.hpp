#pragma once

// Characters alpha_x(k) = P_k(x) of the little q-Legendre hypergroup at the
// spectral points x = 1 - q^n, with certified l^1(h) norm enclosures built
// from the uniform decay estimate
//
//   |alpha(n+k+1)| < 4 q^{k+1} |alpha(n+k)|   for all k >= K,
//
// where K is the least integer with q^{K+1} <= 1/4.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/hypergroup.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

struct KThreshold {
  std::size_t value = 0;
  friend bool operator==(const KThreshold&, const KThreshold&) = default;
};

/// Least K >= 0 with 4 p^{K+1} <= r^{K+1} for q = p/r. Integer comparison
/// only; this agrees with ceil(log 4 / log(1/q) - 1) including the boundary
/// case q^{K+1} = 1/4.
KThreshold k_threshold(const QParam& q);

/// Depth used when the caller does not pick one: n + K + 40.
std::size_t default_k_max(const QParam& q, std::size_t n);

/// Exact prefix alpha_{1-q^n}(0..k_max) plus a certified bound on
/// sum_{k > k_max} |alpha(k)| h(k).
struct TruncatedCharacter {
  std::size_t n = 0;
  std::vector<Rational> values;
  Rational tail_l1_bound;

  std::size_t k_max() const { return values.size() - 1; }
};

/// Builds the truncated character. Throws std::invalid_argument if
/// k_max < n + K or the hypergroup is not little q-Legendre.
TruncatedCharacter character(const Hypergroup& hg, std::size_t n, std::size_t k_max);
TruncatedCharacter character(const Hypergroup& hg, std::size_t n);

/// Bound on sum_{j > k_max} |alpha_{1-q^n}(j)| h(j) given |alpha(k_max)|.
/// Each step beyond k_max multiplies the term by at most 4 q^{s+t}
/// (s = k_max - n, t = 0, 1, ...) and the Haar ratio contributes the factor
/// 1 / (1 - q^{2 k_max + 1}); the super-geometric series is closed off with
/// a geometric majorant once the step factor drops below 1.
Rational character_tail_bound(const Hypergroup& hg, std::size_t n, std::size_t k_max,
                              const Rational& abs_alpha_at_k_max);

/// ||alpha_{1-q^n}||_2^2 = 1 / (q^n (1 - q)).
Rational l2_norm_sq(const QParam& q, std::size_t n);

/// [partial sum up to k_max, partial sum + certified tail].
Enclosure l1_norm(const Hypergroup& hg, std::size_t n, std::size_t k_max);
Enclosure l1_norm(const Hypergroup& hg, std::size_t n);

/// Enclosure of the explicit constant
///   C = q^{-K} [ 1/(1-q) + 1/(1-q^{2K+1}) sum_{k>=1} 4^k q^{(2K+k-1)k/2} ].
/// The series is summed until the geometric tail bound is below `tolerance`.
Enclosure bound_C(const QParam& q, const Rational& tolerance = Rational(1, 1000000000));

struct DecayRow {
  std::size_t n = 0;
  std::size_t k = 0;
  Rational alpha;        ///< alpha(n+k)
  Rational alpha_next;   ///< alpha(n+k+1)
  /// |alpha(n+k+1) / (alpha(n+k) q^{k+1})|; empty when alpha(n+k) = 0.
  std::optional<Rational> ratio_abs;
  /// 4^{k-K} q^{(K+k+1)(k-K)/2}
  Rational envelope;
  /// Sign of alpha(n+k+1)/alpha(n+k); empty when alpha(n+k) = 0.
  std::optional<int> sign;
};

struct DecayViolation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string what;
};

struct DecayReport {
  KThreshold K;
  std::vector<DecayRow> rows;                 ///< sorted by (n, k)
  std::optional<DecayViolation> first_violation;
  /// (n, k) with k < K where alpha(n+k) vanishes; recorded, not judged.
  std::vector<std::pair<std::size_t, std::size_t>> zeros_below_K;
  std::size_t checks = 0;
  bool ok() const { return !first_violation.has_value(); }
};

/// For n <= n_max and K <= k <= K + k_extra decides exactly: alpha(n+k) != 0,
/// the ratio bound < 4, sign alternation, strict decrease of |alpha(n+k)| and
/// the envelope |alpha(n+K+j)| <= 4^j q^{(2K+j+1)j/2} |alpha(n+K)| <= 4^j q^{...}.
/// Rows cover every k in [0, K + k_extra] so the report doubles as plot
/// data. `threads` > 1 spreads the sweep over n.
DecayReport verify_decay(const Hypergroup& hg, std::size_t n_max, std::size_t k_extra,
                         unsigned threads = 1);

struct AsymptoteRow {
  std::size_t k = 0;
  /// alpha(n+k) / ((-1)^k q^{k(k+1)/2})
  Rational quotient;
  /// quotient - limit constant
  Enclosure drift;
};

struct AsymptoteReport {
  std::size_t n = 0;
  /// (q^{n+1}; q)_inf / (q; q)_inf
  Enclosure limit;
  std::vector<AsymptoteRow> rows;
};

AsymptoteReport asymptote_check(const Hypergroup& hg, std::size_t n, std::size_t k_first,
                                std::size_t k_last);

}  // namespace qhyper
