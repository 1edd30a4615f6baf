#include "qhyper/characters.hpp"

#include <stdexcept>

#include "qhyper/detail/parallel.hpp"

namespace qhyper {

namespace {

void require_little_q(const Hypergroup& hg) {
  if (!hg.is_little_q_legendre()) {
    throw std::invalid_argument("characters are defined here for little q-Legendre only");
  }
}

// 4^{k-K} q^{(K+k+1)(k-K)/2}; the exponent is always an integer.
Rational envelope_value(const QParam& q, long K, long k) {
  return Rational(4).pow(k - K) * q.pow((K + k + 1) * (k - K) / 2);
}

}  // namespace

KThreshold k_threshold(const QParam& q) {
  const mpz_class p = q.numerator();
  const mpz_class r = q.denominator();
  mpz_class pk = p;  // p^{K+1}
  mpz_class rk = r;  // r^{K+1}
  std::size_t K = 0;
  while (4 * pk > rk) {
    pk *= p;
    rk *= r;
    ++K;
  }
  return KThreshold{K};
}

std::size_t default_k_max(const QParam& q, std::size_t n) { return n + k_threshold(q).value + 40; }

Rational character_tail_bound(const Hypergroup& hg, std::size_t n, std::size_t k_max,
                              const Rational& abs_alpha_at_k_max) {
  const QParam& q = hg.q();
  const std::size_t K = k_threshold(q).value;
  if (k_max < n + K) throw std::invalid_argument("character_tail_bound: k_max < n + K");
  const long s = static_cast<long>(k_max - n);
  const Rational one(1);

  // step(t) = 4 q^{s+t}; partial products P_i = prod_{t<i} step(t).
  auto step = [&](long t) { return Rational(4) * q.pow(s + t); };
  Rational series(0);
  Rational prod = step(0);  // P_1
  long i = 1;
  while (step(i) >= one) {
    series += prod;
    prod *= step(i);
    ++i;
  }
  series += prod / (one - step(i));

  const long km = static_cast<long>(k_max);
  return abs_alpha_at_k_max * hg.h(k_max) / (one - q.pow(2 * km + 1)) * series;
}

TruncatedCharacter character(const Hypergroup& hg, std::size_t n, std::size_t k_max) {
  require_little_q(hg);
  const QParam& q = hg.q();
  if (k_max < n + k_threshold(q).value) {
    throw std::invalid_argument("character: k_max must be at least n + K");
  }
  TruncatedCharacter ch;
  ch.n = n;
  ch.values = eval_poly_sequence(hg.provider(), k_max, spectral_point(q, n));
  ch.tail_l1_bound = character_tail_bound(hg, n, k_max, ch.values.back().abs());
  return ch;
}

TruncatedCharacter character(const Hypergroup& hg, std::size_t n) {
  return character(hg, n, default_k_max(hg.q(), n));
}

Rational l2_norm_sq(const QParam& q, std::size_t n) {
  return (q.pow(static_cast<long>(n)) * (Rational(1) - q.value())).inverse();
}

Enclosure l1_norm(const Hypergroup& hg, std::size_t n, std::size_t k_max) {
  const TruncatedCharacter ch = character(hg, n, k_max);
  Rational partial(0);
  for (std::size_t k = 0; k < ch.values.size(); ++k) partial += ch.values[k].abs() * hg.h(k);
  return Enclosure(partial, partial + ch.tail_l1_bound);
}

Enclosure l1_norm(const Hypergroup& hg, std::size_t n) {
  return l1_norm(hg, n, default_k_max(hg.q(), n));
}

Enclosure bound_C(const QParam& q, const Rational& tolerance) {
  const long K = static_cast<long>(k_threshold(q).value);
  const Rational one(1);
  // t_k = 4^k q^{(2K+k-1)k/2}, t_{k+1}/t_k = 4 q^{K+k}.
  auto term = [&](long k) { return Rational(4).pow(k) * q.pow((2 * K + k - 1) * k / 2); };
  auto ratio = [&](long k) { return Rational(4) * q.pow(K + k); };

  Rational partial(0);
  long k = 1;
  Rational tail;
  for (;; ++k) {
    const Rational t = term(k);
    partial += t;
    const Rational rho = ratio(k);
    if (rho < one) {
      tail = t * rho / (one - rho);  // sum_{j>k} t_j <= t_k rho/(1-rho)
      if (tail <= tolerance) break;
    }
  }
  const Rational scale = q.pow(-K);
  const Rational inv_1mq = (one - q.value()).inverse();
  const Rational inv_head = (one - q.pow(2 * K + 1)).inverse();
  return Enclosure(scale * (inv_1mq + inv_head * partial),
                   scale * (inv_1mq + inv_head * (partial + tail)));
}

DecayReport verify_decay(const Hypergroup& hg, std::size_t n_max, std::size_t k_extra,
                         unsigned threads) {
  require_little_q(hg);
  const QParam& q = hg.q();
  const KThreshold K = k_threshold(q);
  const std::size_t k_last = K.value + k_extra;
  const long lK = static_cast<long>(K.value);

  struct PerN {
    std::vector<DecayRow> rows;
    std::optional<DecayViolation> violation;
    std::vector<std::pair<std::size_t, std::size_t>> zeros;
    std::size_t checks = 0;
  };
  std::vector<PerN> results(n_max + 1);

  detail::parallel_for(n_max + 1, threads, [&](std::size_t n) {
    PerN& out = results[n];
    const std::vector<Rational> alpha =
        eval_poly_sequence(hg.provider(), n + k_last + 1, spectral_point(q, n));
    auto fail = [&](std::size_t k, std::string what) {
      if (!out.violation) out.violation = DecayViolation{n, k, std::move(what)};
    };
    const Rational& alpha_nK = alpha[n + K.value];

    for (std::size_t k = 0; k <= k_last; ++k) {
      const long lk = static_cast<long>(k);
      DecayRow row;
      row.n = n;
      row.k = k;
      row.alpha = alpha[n + k];
      row.alpha_next = alpha[n + k + 1];
      row.envelope = envelope_value(q, lK, lk);
      if (!row.alpha.is_zero()) {
        const Rational quotient = row.alpha_next / row.alpha;
        row.ratio_abs = (quotient / q.pow(lk + 1)).abs();
        row.sign = quotient.sign();
      }
      if (k < K.value) {
        if (row.alpha.is_zero()) out.zeros.emplace_back(n, k);
        out.rows.push_back(std::move(row));
        continue;
      }

      ++out.checks;
      if (row.alpha.is_zero()) {
        fail(k, "alpha(n+k) vanishes");
      } else {
        if (!(*row.ratio_abs < Rational(4))) fail(k, "ratio bound |alpha(n+k+1)/(alpha(n+k) q^{k+1})| < 4");
        if (!(*row.sign < 0)) fail(k, "sign alternation alpha(n+k+1)/alpha(n+k) < 0");
      }
      if (!(row.alpha_next.abs() < row.alpha.abs())) fail(k, "strict decrease of |alpha(n+k)|");
      if (!(row.alpha.abs() <= row.envelope * alpha_nK.abs())) fail(k, "envelope relative to |alpha(n+K)|");
      if (!(row.alpha.abs() <= row.envelope)) fail(k, "absolute envelope");
      if (!(alpha_nK.abs() <= Rational(1))) fail(k, "|alpha(n+K)| <= 1");
      out.rows.push_back(std::move(row));
    }
  });

  DecayReport report;
  report.K = K;
  for (auto& r : results) {
    for (auto& row : r.rows) report.rows.push_back(std::move(row));
    if (r.violation && !report.first_violation) report.first_violation = r.violation;
    for (auto& z : r.zeros) report.zeros_below_K.push_back(z);
    report.checks += r.checks;
  }
  return report;
}

AsymptoteReport asymptote_check(const Hypergroup& hg, std::size_t n, std::size_t k_first,
                                std::size_t k_last) {
  require_little_q(hg);
  const QParam& q = hg.q();
  const Rational tiny = Rational(1) / Rational(10).pow(40);
  const Enclosure num = q_pochhammer_inf_tol(q.pow(static_cast<long>(n) + 1), q, tiny);
  const Enclosure den = q_pochhammer_inf_tol(q.value(), q, tiny);

  AsymptoteReport report;
  report.n = n;
  report.limit = (num / den).outward(256);
  const std::vector<Rational> alpha = eval_poly_sequence(hg.provider(), n + k_last, spectral_point(q, n));
  for (std::size_t k = k_first; k <= k_last; ++k) {
    const long lk = static_cast<long>(k);
    Rational scale = q.pow(lk * (lk + 1) / 2);
    if (k % 2 == 1) scale = -scale;
    AsymptoteRow row;
    row.k = k;
    row.quotient = alpha[n + k] / scale;
    row.drift = Enclosure::point(row.quotient) - report.limit;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qhyper
