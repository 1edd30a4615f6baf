#include "qhyper/contfrac.hpp"

#include <stdexcept>

#include "qhyper/characters.hpp"
#include "qhyper/detail/parallel.hpp"

namespace qhyper {

namespace {

void require_little_q(const Hypergroup& hg) {
  if (!hg.is_little_q_legendre()) {
    throw std::invalid_argument("coefficient functions are defined for little q-Legendre only");
  }
}

Rational p1_at_spectral_point(const Hypergroup& hg, std::size_t n) {
  const RecurrenceTriple& t0 = hg.provider()(0);
  return (spectral_point(hg.q(), n) - t0.b) / t0.a;
}

const Enclosure& worpitzky_interval() {
  static const Enclosure disk(Rational(2, 3), Rational(2));
  return disk;
}

}  // namespace

Rational cf_coefficient(CFKind kind, const Hypergroup& hg, std::size_t n, std::size_t k) {
  require_little_q(hg);
  const CoeffProvider& p = hg.provider();
  const Rational P1 = p1_at_spectral_point(hg, n);
  switch (kind) {
    case CFKind::A:
      return (p(k + 1).b - P1) * (p(k + 2).b - P1) / (p(k + 1).a * p(k + 2).c);
    case CFKind::B:
      return (p(n + k + 1).b - P1) * hg.q().pow(static_cast<long>(k)) / p(n + k + 1).c;
    case CFKind::C:
      return (p(k + 1).b - P1) / p(k + 1).a;
    case CFKind::D:
      return (p(k + 2).b - P1) / p(k + 2).c;
  }
  throw std::logic_error("unreachable");
}

WorpitzkyResult worpitzky_eval(const std::function<Rational(std::size_t)>& s, std::size_t depth,
                               const std::optional<TailCertificate>& tail) {
  if (depth == 0) throw std::invalid_argument("worpitzky_eval: depth must be positive");
  std::vector<Rational> terms;
  terms.reserve(depth);
  const Rational quarter(1, 4);
  for (std::size_t j = 0; j < depth; ++j) {
    terms.push_back(s(j));
    if (terms.back().abs() > quarter) {
      throw std::domain_error("worpitzky_eval: |s_" + std::to_string(j) + "| > 1/4");
    }
  }
  // f_j = 1 / (1 + s_j f_{j+1}), starting from the tail interval.
  const Enclosure one = Enclosure::point(Rational(1));
  Enclosure f = worpitzky_interval();
  for (std::size_t j = depth; j-- > 0;) {
    f = one / (one + Enclosure::point(terms[j]) * f);
  }
  return WorpitzkyResult{f, tail.has_value()};
}

TailCertificate psi_tail_certificate() {
  return TailCertificate{"A_n(n+k) > 4 for every k >= K, hence 0 < 1/A_n(n+k) < 1/4"};
}

WorpitzkyResult psi(const Hypergroup& hg, std::size_t n, std::size_t k, std::size_t depth) {
  require_little_q(hg);
  if (k < k_threshold(hg.q()).value) throw std::invalid_argument("psi: k must be at least K");
  auto s = [&](std::size_t j) { return -cf_coefficient(CFKind::A, hg, n, n + k + j).inverse(); };
  return worpitzky_eval(s, depth, psi_tail_certificate());
}

CoefficientBoundReport verify_coefficient_bounds(const Hypergroup& hg, std::size_t n_max, std::size_t k_max,
                             unsigned threads) {
  require_little_q(hg);
  const QParam& q = hg.q();
  const std::size_t K = k_threshold(q).value;
  const Rational one(1);
  const Rational half_inv_q = (Rational(2) * q.value()).inverse();

  struct PerN {
    std::size_t checks = 0;
    std::optional<CoefficientBoundViolation> violation;
  };
  std::vector<PerN> results(n_max + 1);
  detail::parallel_for(n_max + 1, threads, [&](std::size_t n) {
    PerN& out = results[n];
    auto check = [&](bool ok, std::size_t k, const char* what) {
      ++out.checks;
      if (!ok && !out.violation) out.violation = CoefficientBoundViolation{n, k, what};
    };
    for (std::size_t k = K; k <= k_max; ++k) {
      const long lk = static_cast<long>(k);
      const Rational A = cf_coefficient(CFKind::A, hg, n, n + k);
      const Rational B = cf_coefficient(CFKind::B, hg, n, k);
      const Rational C = cf_coefficient(CFKind::C, hg, n, n + k);
      const Rational D = cf_coefficient(CFKind::D, hg, n, n + k);
      check(A > Rational(4), k, "A_n(n+k) > 4");
      check(B > half_inv_q, k, "B_n(k) > 1/(2q)");
      check(C > q.pow(-lk - 1) - Rational(2), k, "C_n(n+k) > q^{-k-1} - 2");
      check(B > (one - Rational(2) * q.pow(lk + 1)) / q.value(), k, "B_n(k) > (1 - 2q^{k+1})/q");
      check(C < D, k, "C_n(n+k) < D_n(n+k)");
    }
  });

  CoefficientBoundReport report;
  for (auto& r : results) {
    report.checks += r.checks;
    if (r.violation && !report.first_violation) report.first_violation = r.violation;
  }
  return report;
}

bool PsiIdentityReport::ok() const {
  for (const auto& r : rows) {
    if (!r.contained || !r.in_disk || !r.bounded || !r.psi.disk_certified) return false;
  }
  return true;
}

PsiIdentityReport psi_identity_check(const Hypergroup& hg, std::size_t n_max, std::size_t k_extra,
                                     std::size_t depth, unsigned threads) {
  require_little_q(hg);
  const QParam& q = hg.q();
  const std::size_t K = k_threshold(q).value;
  const std::size_t per_n = k_extra + 1;

  PsiIdentityReport report;
  report.rows.resize((n_max + 1) * per_n);
  detail::parallel_for(n_max + 1, threads, [&](std::size_t n) {
    const std::vector<Rational> alpha =
        eval_poly_sequence(hg.provider(), n + K + k_extra + 1, spectral_point(q, n));
    for (std::size_t i = 0; i < per_n; ++i) {
      const std::size_t k = K + i;
      PsiIdentityRow& row = report.rows[n * per_n + i];
      row.n = n;
      row.k = k;
      row.phi = -cf_coefficient(CFKind::B, hg, n, k) * alpha[n + k + 1] /
                (alpha[n + k] * q.pow(static_cast<long>(k)));
      row.psi = psi(hg, n, k, depth);
      row.contained = row.psi.value.contains(row.phi);
      row.in_disk = worpitzky_interval().contains(row.psi.value);
      row.bounded = row.phi.abs() <= Rational(2);
    }
  });
  return report;
}

}  // namespace qhyper
