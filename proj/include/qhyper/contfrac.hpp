#pragma once

// Coefficient functions A_n, B_n, C_n, D_n attached to the little q-Legendre
// recurrence, Worpitzky-certified evaluation of real continued fractions
//
//   1 / (1 + s_0 / (1 + s_1 / (1 + ...))),   |s_j| <= 1/4,
//
// and the fraction psi_{n,k} that reproduces the character ratios.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/hypergroup.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

enum class CFKind { A, B, C, D };

/// With P1 = P_1(1 - q^n):
///   A_n(k) = (b_{k+1} - P1)(b_{k+2} - P1) / (a_{k+1} c_{k+2})
///   B_n(k) = (b_{n+k+1} - P1) q^k / c_{n+k+1}
///   C_n(k) = (b_{k+1} - P1) / a_{k+1}
///   D_n(k) = (b_{k+2} - P1) / c_{k+2}
/// Throws std::invalid_argument unless the hypergroup is little q-Legendre.
Rational cf_coefficient(CFKind kind, const Hypergroup& hg, std::size_t n, std::size_t k);

/// Caller-supplied proof that |s_j| <= 1/4 holds for every j, including the
/// indices beyond the checked prefix. Only its presence matters to the
/// evaluator; the text says where the claim comes from.
struct TailCertificate {
  std::string statement;
};

struct WorpitzkyResult {
  Enclosure value;
  /// True when a tail certificate was supplied, so value is a proven
  /// enclosure of the infinite fraction. Without one, value only encloses
  /// the fraction under the unproven assumption that the tail stays admissible.
  bool disk_certified = false;
};

/// Evaluates the fraction truncated after `depth` levels, replacing the
/// remaining tail by the whole real Worpitzky interval [2/3, 2]. The
/// partial numerators s_0 .. s_{depth-1} are checked exactly; throws
/// std::domain_error if one has |s_j| > 1/4 and std::invalid_argument if
/// depth == 0. Arithmetic is exact, so deeper evaluations give nested
/// enclosures.
WorpitzkyResult worpitzky_eval(const std::function<Rational(std::size_t)>& s, std::size_t depth,
                               const std::optional<TailCertificate>& tail = std::nullopt);

/// The admissibility certificate used for psi: A_n(n+k) > 4 for all k >= K.
TailCertificate psi_tail_certificate();

/// psi_{n,k} = 1 / (1 - (1/A_n(n+k)) / (1 - (1/A_n(n+k+1)) / (1 - ...))).
/// Throws std::invalid_argument if k < K.
WorpitzkyResult psi(const Hypergroup& hg, std::size_t n, std::size_t k, std::size_t depth = 80);

struct CoefficientBoundViolation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string what;
};

struct CoefficientBoundReport {
  std::size_t checks = 0;
  std::optional<CoefficientBoundViolation> first_violation;
  bool ok() const { return !first_violation.has_value(); }
};

/// Decides exactly, for n <= n_max and K <= k <= k_max:
///   A_n(n+k) > 4,  B_n(k) > 1/(2q),  C_n(n+k) > q^{-k-1} - 2,
///   B_n(k) > (1 - 2 q^{k+1}) / q,  C_n(n+k) < D_n(n+k).
CoefficientBoundReport verify_coefficient_bounds(const Hypergroup& hg, std::size_t n_max, std::size_t k_max,
                             unsigned threads = 1);

struct PsiIdentityRow {
  std::size_t n = 0;
  std::size_t k = 0;
  /// -B_n(k) alpha(n+k+1) / (alpha(n+k) q^k), exact.
  Rational phi;
  WorpitzkyResult psi;
  bool contained = false;   ///< phi lies in psi.value
  bool in_disk = false;     ///< psi.value is inside [2/3, 2]
  bool bounded = false;     ///< |phi| <= 2
};

struct PsiIdentityReport {
  std::vector<PsiIdentityRow> rows;  ///< sorted by (n, k)
  bool ok() const;
};

/// Compares phi with the enclosure of psi_{n,k} for n <= n_max and
/// K <= k <= K + k_extra.
PsiIdentityReport psi_identity_check(const Hypergroup& hg, std::size_t n_max, std::size_t k_extra,
                                     std::size_t depth = 80, unsigned threads = 1);

}  // namespace qhyper
