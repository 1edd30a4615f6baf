#include "qhyper/idempotents.hpp"

#include <stdexcept>

#include "qhyper/detail/parallel.hpp"

namespace qhyper {

IdempotentApprox idempotent(const Hypergroup& hg, std::size_t n, std::size_t k_max) {
  const TruncatedCharacter ch = character(hg, n, k_max);
  const Rational scale = mu_mass(hg.q(), n);  // 1 / ||alpha||_2^2
  IdempotentApprox e;
  e.n = n;
  e.body.reserve(ch.values.size());
  for (const auto& v : ch.values) e.body.push_back(v * scale);
  e.tail_l1_bound = ch.tail_l1_bound * scale;
  return e;
}

IdempotentApprox idempotent(const Hypergroup& hg, std::size_t n) {
  return idempotent(hg, n, default_k_max(hg.q(), n));
}

Enclosure l1_norm(const Hypergroup& hg, const IdempotentApprox& e) {
  Rational sum(0);
  for (std::size_t k = 0; k < e.body.size(); ++k) sum += e.body[k].abs() * hg.h(k);
  return Enclosure(sum, sum + e.tail_l1_bound);
}

Enclosure fourier_enclosure(const Hypergroup& hg, const IdempotentApprox& e,
                            const SpectrumPoint& x) {
  const Rational s = fourier(e.as_hseq(hg), x);
  return Enclosure(s - e.tail_l1_bound, s + e.tail_l1_bound);
}

bool OrthogonalityReport::ok() const {
  for (const auto& r : fourier_side) {
    if (!r.contains_target) return false;
  }
  for (const auto& r : time_side) {
    if (!r.contains_target) return false;
  }
  return true;
}

OrthogonalityReport orthogonality_check(const Hypergroup& hg, std::size_t m, std::size_t n,
                                        std::size_t probe) {
  const IdempotentApprox em = idempotent(hg, m);
  const IdempotentApprox en = idempotent(hg, n);
  OrthogonalityReport report;
  report.m = m;
  report.n = n;

  for (std::size_t p = 0; p <= probe; ++p) {
    const SpectrumPoint x = SpectrumPoint::at(p);
    OrthogonalityRow row;
    row.p = p;
    row.product = fourier_enclosure(hg, em, x) * fourier_enclosure(hg, en, x);
    const Rational target = (m == n && p == n) ? Rational(1) : Rational(0);
    row.contains_target = row.product.contains(target);
    report.max_width = max(report.max_width, row.product.width());
    report.fourier_side.push_back(std::move(row));
  }

  const HSeq u = em.as_hseq(hg);
  const HSeq v = en.as_hseq(hg);
  const Rational tu = em.tail_l1_bound;
  const Rational tv = en.tail_l1_bound;
  // |f * g (j)| <= ||f||_inf ||g||_1 <= ||f||_1 ||g||_1 because h >= 1.
  const Rational slack = norm_p(u, 1) * tv + tu * norm_p(v, 1) + tu * tv;
  for (std::size_t j = 0; j <= probe; ++j) {
    const Rational c = convolve_at(u, v, j);
    ConvolutionRow row;
    row.j = j;
    row.value = Enclosure(c - slack, c + slack);
    // e_n(j) is exact in the prefix as long as j <= k_max.
    const Rational target = m == n ? en.body.at(j) : Rational(0);
    row.contains_target = row.value.contains(target);
    report.time_side.push_back(std::move(row));
  }
  return report;
}

Rational mvt_coeff_bound(const Hypergroup& hg, std::size_t k) {
  const Polynomial d = hg.monomials()(k).derivative();
  Rational sum(0);
  for (const auto& c : d.coeffs()) sum += c.abs();
  return sum;
}

Rational epsilon_coefficient(const Hypergroup& hg, std::size_t k, std::size_t n) {
  return Rational(1) - eval_poly(hg.provider(), k, spectral_point(hg.q(), n));
}

std::vector<ResidualPoint> approx_epsilon_series(const Hypergroup& hg, std::size_t k,
                                                 std::size_t N_max, std::size_t extra_depth,
                                                 unsigned threads) {
  const std::size_t K = k_threshold(hg.q()).value;
  std::vector<IdempotentApprox> es(N_max + 1);
  detail::parallel_for(N_max + 1, threads,
                       [&](std::size_t n) { es[n] = idempotent(hg, n, n + K + extra_depth); });

  std::vector<ResidualPoint> out;
  HSeq r = HSeq::epsilon(hg, k) - HSeq::epsilon(hg, 0);
  Rational tail(0);
  Rational partial_upper(0);
  for (std::size_t N = 0; N <= N_max; ++N) {
    const Rational c = epsilon_coefficient(hg, k, N);
    r += es[N].as_hseq(hg) * c;
    tail += c.abs() * es[N].tail_l1_bound;
    partial_upper += c.abs() * l1_norm(hg, es[N]).hi();
    const Rational s = norm_p(r, 1);
    out.push_back(ResidualPoint{N, Enclosure(max(Rational(0), s - tail), s + tail), partial_upper});
  }
  return out;
}

ResidualPoint approx_epsilon(const Hypergroup& hg, std::size_t k, std::size_t N,
                             std::size_t extra_depth) {
  return approx_epsilon_series(hg, k, N, extra_depth).back();
}

}  // namespace qhyper
