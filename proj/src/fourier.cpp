#include "qhyper/fourier.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhyper {

Rational SpectrumPoint::value(const Hypergroup& hg) const {
  if (!m) return Rational(1);
  return spectral_point(hg.q(), *m);
}

Rational fourier(const HSeq& f, const Rational& x) {
  if (f.empty()) return Rational(0);
  const Hypergroup& hg = f.hypergroup();
  const std::vector<Rational> P = eval_poly_sequence(hg.provider(), f.max_index(), x);
  Rational sum(0);
  for (const auto& [k, v] : f.values()) sum += v * P[k] * hg.h(k);
  return sum;
}

Rational fourier(const HSeq& f, const SpectrumPoint& x) {
  return fourier(f, x.value(f.hypergroup()));
}

PlancherelCheck plancherel_check(const HSeq& f, std::size_t n_trunc) {
  const Hypergroup& hg = f.hypergroup();
  const QParam& q = hg.q();
  PlancherelCheck out;
  out.lhs = norm_p(f, 2);
  Rational sum(0);
  for (std::size_t n = 0; n <= n_trunc; ++n) {
    const Rational fx = fourier(f, SpectrumPoint::at(n));
    sum += fx * fx * mu_mass(q, n);
  }
  const Rational l1 = norm_p(f, 1);
  out.rhs = Enclosure(sum, sum + l1 * l1 * q.pow(static_cast<long>(n_trunc) + 1));
  return out;
}

Rational integrate(const Hypergroup& hg, const Polynomial& F) { return hg.moments().integrate(F); }

Rational inverse_plancherel_poly(const Hypergroup& hg, const Polynomial& F, std::size_t k) {
  return integrate(hg, F * hg.monomials()(k));
}

HSeq inverse_plancherel_poly(const Hypergroup& hg, const Polynomial& F) {
  std::map<std::size_t, Rational> values;
  if (F.is_zero()) return HSeq(hg);
  for (std::size_t k = 0; k <= F.degree(); ++k) {
    Rational v = inverse_plancherel_poly(hg, F, k);
    if (!v.is_zero()) values.emplace(k, std::move(v));
  }
  return HSeq(hg, std::move(values));
}

Polynomial from_p_basis(const Hypergroup& hg, std::span<const Rational> coeffs) {
  Polynomial out;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (!coeffs[n].is_zero()) out += hg.monomials()(n) * coeffs[n];
  }
  return out;
}

KappaSeq kappa(const Hypergroup& hg, std::size_t n) {
  KappaSeq out;
  out.n = n;
  const Polynomial derivative = hg.monomials()(n).derivative();
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(integrate(hg, derivative * hg.monomials()(k)));
  }
  return out;
}

Enclosure kappa_conv_sup(const Hypergroup& hg, std::size_t n, const HSeq& phi,
                         std::size_t probe_max) {
  const HSeq k = kappa(hg, n).as_hseq(hg);
  Rational best(0);
  if (k.empty() || phi.empty()) return Enclosure::point(best);
  for (std::size_t m = 0; m <= probe_max; ++m) best = max(best, convolve_at(k, phi, m).abs());
  return Enclosure::point(best);
}

Enclosure kappa_conv_sup(const Hypergroup& hg, std::size_t n, const TruncatedCharacter& phi,
                         std::size_t probe_max) {
  if (n == 0) return Enclosure::point(Rational(0));
  // T_m kappa_n(k) vanishes once k > m + n - 1.
  const std::size_t reach = probe_max + n - 1;
  if (phi.k_max() < reach) {
    throw std::invalid_argument("kappa_conv_sup: character prefix too short for the probe window");
  }
  const std::span<const Rational> prefix(phi.values.data(), reach + 1);
  return kappa_conv_sup(hg, n, HSeq::from_dense(hg, prefix), probe_max);
}

Rational cesaro_fn(const Hypergroup& hg, std::size_t n, std::size_t k) {
  const Polynomial& Pn = hg.monomials()(n);
  return hg.h(n) * integrate(hg, Pn * Pn * hg.monomials()(k));
}

Rational cesaro_Fn(const Hypergroup& hg, std::size_t n, std::size_t k) {
  Rational sum(0);
  for (std::size_t j = 0; j <= n; ++j) sum += cesaro_fn(hg, j, k);
  return sum / Rational(static_cast<long>(n) + 1);
}

P4Integral p4_integral(const Hypergroup& hg, std::size_t n) {
  const QParam& q = hg.q();
  const Polynomial& Pn = hg.monomials()(n);
  const Polynomial sq = Pn * Pn;
  const Rational h = hg.h(n);
  P4Integral out;
  out.n = n;
  out.ratio = h * integrate(hg, sq * sq);
  out.integral = out.ratio * h;
  const Rational at_point = eval_poly(hg.provider(), n, spectral_point(q, n));
  out.lower_bound = (Rational(1) - q.pow(2 * static_cast<long>(n) + 1)) * at_point.pow(4);
  return out;
}

Rational p4_integral_by_linearization(const Hypergroup& hg, std::size_t n) {
  const LinearizationRow& row = hg.linearization().row(n, n);
  Rational sum(0);
  for (std::size_t i = 0; i < row.values.size(); ++i) {
    sum += row.values[i] * row.values[i] / hg.h(row.first + i);
  }
  return sum;
}

Rational gamma_k(const QParam& q, std::size_t k) {
  const long lk = static_cast<long>(k);
  return q.pow(lk * (3 * lk + 1) / 2) / q_pochhammer(q.value(), q, k).pow(3);
}

bool gamma_decreasing(const QParam& q) {
  const Rational one_minus_q = Rational(1) - q.value();
  return q.pow(2) < one_minus_q.pow(3);
}

QLimitResult qlimit_identity(const QParam& q, std::size_t n_probe, const Rational& tolerance) {
  const CoeffProvider provider = CoeffProvider::little_q_legendre(q);
  QLimitResult out;
  out.lhs.reserve(n_probe + 1);
  for (std::size_t n = 0; n <= n_probe; ++n) {
    out.lhs.push_back(eval_poly(provider, n, spectral_point(q, n)));
  }

  const Enclosure poch = q_pochhammer_inf_tol(q.value(), q, tolerance);
  Enclosure series;
  if (gamma_decreasing(q)) {
    // Alternating series with decreasing terms: the sum lies between any
    // two consecutive partial sums.
    out.rule = TailRule::Leibniz;
    Rational partial = gamma_k(q, 0);
    std::size_t k = 0;
    Rational next = gamma_k(q, 1);
    while (next > tolerance) {
      partial += (k % 2 == 0) ? -next : next;
      ++k;
      next = gamma_k(q, k + 1);
    }
    const Rational following = (k % 2 == 0) ? partial - next : partial + next;
    series = Enclosure(min(partial, following), max(partial, following));
    out.leibniz_lower_bound = (poch * Enclosure::point(gamma_k(q, 0) - gamma_k(q, 1))).outward(256);
  } else {
    // |gamma_k| <= q^{k(3k+1)/2} / (q;q)_inf^3 and the exponents grow by at
    // least one per step, so the tail past N is at most
    // q^{e(N+1)} / ((1-q) (q;q)_inf^3).
    out.rule = TailRule::AbsoluteTail;
    const Rational inv_cube = poch.lo().pow(3).inverse();
    const Rational one_minus_q = Rational(1) - q.value();
    Rational partial(0);
    Rational tail;
    for (std::size_t k = 0;; ++k) {
      const Rational g = gamma_k(q, k);
      partial += (k % 2 == 0) ? g : -g;
      const long e = static_cast<long>(k + 1) * (3 * static_cast<long>(k + 1) + 1) / 2;
      tail = q.pow(e) / one_minus_q * inv_cube;
      if (tail <= tolerance) break;
    }
    series = Enclosure(partial - tail, partial + tail);
  }
  out.rhs = (poch * series).outward(256);
  return out;
}

namespace {

Rational qq(const QParam& q, std::size_t n) { return q_pochhammer(q.value(), q, n); }

Rational sign_power(std::size_t e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

bool finite_identity_product_sum(const QParam& q, std::size_t n) {
  const long ln = static_cast<long>(n);
  const Rational Pn = eval_poly(CoeffProvider::little_q_legendre(q), n, spectral_point(q, n));
  const Rational qn = qq(q, n);
  const Rational lhs = sign_power(n) * q.pow(-ln * (ln + 1) / 2) / (qn * qn) * Pn;
  Rational rhs(0);
  for (std::size_t k = 0; k <= n; ++k) {
    const long lk = static_cast<long>(k);
    const Rational qk = qq(q, k);
    const Rational qnk = qq(q, n - k);
    rhs += q_pochhammer(q.pow(-ln), q, n - k) * q.pow(lk * lk) / (qk * qk * qnk * qnk);
  }
  return lhs == rhs;
}

bool finite_identity_pochhammer(const QParam& q, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("finite_identity_pochhammer: k > n");
  const long ln = static_cast<long>(n);
  const long lk = static_cast<long>(k);
  const Rational lhs = q_pochhammer(q.pow(-ln), q, n - k);
  const Rational rhs = sign_power(n - k) * q.pow((lk - ln) * (ln + lk + 1) / 2) * qq(q, n) / qq(q, k);
  return lhs == rhs;
}

bool finite_identity_gamma_sum(const QParam& q, std::size_t n) {
  const Rational Pn = eval_poly(CoeffProvider::little_q_legendre(q), n, spectral_point(q, n));
  const Rational qn3 = qq(q, n).pow(3);
  Rational rhs(0);
  for (std::size_t k = 0; k <= n; ++k) {
    const long lk = static_cast<long>(k);
    const Rational qnk = qq(q, n - k);
    rhs += sign_power(k) * qn3 * q.pow(lk * (3 * lk + 1) / 2) / (qq(q, k).pow(3) * qnk * qnk);
  }
  return Pn == rhs;
}

}  // namespace qhyper
