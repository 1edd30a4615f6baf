#pragma once

// Idempotents e_n = alpha_{1-q^n} / ||alpha_{1-q^n}||_2^2 of l^1(h), whose
// Fourier transforms are point indicators on the spectrum, and the
// approximation of epsilon_k by epsilon_0 minus finite idempotent sums.

#include <cstddef>
#include <vector>

#include "qhyper/characters.hpp"
#include "qhyper/fourier.hpp"
#include "qhyper/hypergroup.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

/// Exact prefix of e_n plus a certified bound on the l^1(h) mass beyond it.
struct IdempotentApprox {
  std::size_t n = 0;
  std::vector<Rational> body;  ///< e_n(0 .. k_max) = alpha values times q^n (1-q)
  Rational tail_l1_bound;

  std::size_t k_max() const { return body.size() - 1; }
  HSeq as_hseq(const Hypergroup& hg) const { return HSeq::from_dense(hg, body); }
};

/// Throws std::invalid_argument if k_max < n + K.
IdempotentApprox idempotent(const Hypergroup& hg, std::size_t n, std::size_t k_max);
IdempotentApprox idempotent(const Hypergroup& hg, std::size_t n);

/// ||e_n||_1 enclosure.
Enclosure l1_norm(const Hypergroup& hg, const IdempotentApprox& e);

/// e_n^(x) for a spectrum point x. Since |P_k(x)| <= 1 there, the
/// truncated tail moves the value by at most tail_l1_bound.
Enclosure fourier_enclosure(const Hypergroup& hg, const IdempotentApprox& e,
                            const SpectrumPoint& x);

struct OrthogonalityRow {
  std::size_t p = 0;       ///< spectrum point 1 - q^p
  Enclosure product;       ///< e_m^(x) e_n^(x)
  bool contains_target = false;
};

struct ConvolutionRow {
  std::size_t j = 0;
  /// Encloses e_m * e_n (j): exact convolution of the truncations widened by
  /// ||u||_1 t_v + t_u ||v||_1 + t_u t_v.
  Enclosure value;
  bool contains_target = false;
};

struct OrthogonalityReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<OrthogonalityRow> fourier_side;  ///< p = 0 .. probe
  std::vector<ConvolutionRow> time_side;       ///< j = 0 .. probe
  Rational max_width;                          ///< over fourier_side
  bool ok() const;
};

/// Fourier side: e_m^ e_n^ at 1 - q^p must enclose 1 if m = n = p and 0
/// otherwise. Time side: e_m * e_n (j) must enclose e_n(j) if m = n and 0
/// otherwise.
OrthogonalityReport orthogonality_check(const Hypergroup& hg, std::size_t m, std::size_t n,
                                        std::size_t probe);

/// Bound on max_{[0,1]} |P_k'| from the absolute coefficient sum of P_k'.
Rational mvt_coeff_bound(const Hypergroup& hg, std::size_t k);

/// c_n = (epsilon_0 - epsilon_k)^(1 - q^n) = 1 - P_k(1 - q^n).
Rational epsilon_coefficient(const Hypergroup& hg, std::size_t k, std::size_t n);

struct ResidualPoint {
  std::size_t N = 0;
  /// || epsilon_k - (epsilon_0 - sum_{n<=N} c_n e_n) ||_1
  Enclosure residual;
  /// Upper bound on || sum_{n<=N} c_n e_n ||_1.
  Rational partial_l1_upper;
};

/// Residual enclosures for N = 0 .. N_max. Each e_n is truncated at
/// n + K + extra_depth; the exact finite sum is widened by sum |c_n| t_n.
std::vector<ResidualPoint> approx_epsilon_series(const Hypergroup& hg, std::size_t k,
                                                 std::size_t N_max, std::size_t extra_depth = 40,
                                                 unsigned threads = 1);
ResidualPoint approx_epsilon(const Hypergroup& hg, std::size_t k, std::size_t N,
                             std::size_t extra_depth = 40);

}  // namespace qhyper
