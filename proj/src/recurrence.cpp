#include "qhyper/recurrence.hpp"

#include <stdexcept>

#include "qhyper/detail/lazy_sequence.hpp"

namespace qhyper {

namespace {

RecurrenceTriple little_q_legendre_triple(const QParam& qp, std::size_t n) {
  const Rational one(1);
  const Rational& q = qp.value();
  if (n == 0) return {one / (q + one), q / (q + one), Rational(0)};
  const long ln = static_cast<long>(n);
  const Rational qn = qp.pow(ln);
  const Rational qn1 = qn * q;
  const Rational q2n1 = qn * qn1;
  const Rational a = qn * (one + q) * (one - qn1) / ((one - q2n1) * (one + qn1));
  const Rational c = qn * (one + q) * (one - qn) / ((one - q2n1) * (one + qn));
  const Rational b = (one - qn) * (one - qn1) / ((one + qn) * (one + qn1));
  return {a, b, c};
}

RecurrenceTriple comparison_triple(Family family, std::size_t n) {
  // P_1(x) = x for all three comparison families.
  if (n == 0) return {Rational(1), Rational(0), Rational(0)};
  const long ln = static_cast<long>(n);
  Rational c;
  switch (family) {
    case Family::Chebyshev1: c = Rational(1, 2); break;
    case Family::UltrasphericalMinusQuarter: c = Rational(2 * ln, 4 * ln + 1); break;
    case Family::Legendre: c = Rational(ln, 2 * ln + 1); break;
    case Family::LittleQLegendre: throw std::logic_error("unreachable");
  }
  return {Rational(1) - c, Rational(0), c};
}

}  // namespace

struct CoeffProvider::State {
  Family family;
  std::optional<QParam> q;
  detail::LazySequence<RecurrenceTriple> triples;

  State(Family f, std::optional<QParam> qp)
      : family(f), q(std::move(qp)), triples([f, qq = q](std::size_t n, const auto&) {
          return f == Family::LittleQLegendre ? little_q_legendre_triple(*qq, n)
                                              : comparison_triple(f, n);
        }) {}
};

CoeffProvider::CoeffProvider(std::shared_ptr<const State> state) : state_(std::move(state)) {}

CoeffProvider CoeffProvider::little_q_legendre(const QParam& q) {
  return CoeffProvider(std::make_shared<const State>(Family::LittleQLegendre, q));
}
CoeffProvider CoeffProvider::chebyshev1() {
  return CoeffProvider(std::make_shared<const State>(Family::Chebyshev1, std::nullopt));
}
CoeffProvider CoeffProvider::ultraspherical_m14() {
  return CoeffProvider(std::make_shared<const State>(Family::UltrasphericalMinusQuarter, std::nullopt));
}
CoeffProvider CoeffProvider::legendre() {
  return CoeffProvider(std::make_shared<const State>(Family::Legendre, std::nullopt));
}

Family CoeffProvider::family() const noexcept { return state_->family; }

const QParam& CoeffProvider::q() const {
  if (!state_->q) throw std::logic_error(name() + " has no q parameter");
  return *state_->q;
}

bool CoeffProvider::has_q() const noexcept { return state_->q.has_value(); }

std::string CoeffProvider::name() const {
  switch (state_->family) {
    case Family::LittleQLegendre: return "little q-Legendre (q=" + state_->q->value().str() + ")";
    case Family::Chebyshev1: return "Chebyshev (first kind)";
    case Family::UltrasphericalMinusQuarter: return "ultraspherical (-1/4)";
    case Family::Legendre: return "Legendre";
  }
  return "unknown";
}

const RecurrenceTriple& CoeffProvider::operator()(std::size_t n) const { return state_->triples[n]; }

RecurrenceTriple coeffs(const CoeffProvider& provider, std::size_t n) { return provider(n); }

// ---------------------------------------------------------------------------

struct HaarWeights::State {
  detail::LazySequence<Rational> h;
  explicit State(CoeffProvider p)
      : h([p = std::move(p)](std::size_t n, const std::deque<Rational>& prev) {
          if (n == 0) return Rational(1);
          if (n == 1) return p(1).c.inverse();
          return prev[n - 1] * p(n - 1).a / p(n).c;
        }) {}
};

HaarWeights::HaarWeights(CoeffProvider provider)
    : provider_(provider), state_(std::make_shared<const State>(std::move(provider))) {}

const Rational& HaarWeights::operator()(std::size_t n) const { return state_->h[n]; }

Rational haar_weight(const HaarWeights& hw, std::size_t n) { return hw(n); }

Rational haar_weight_closed_form(const QParam& q, std::size_t n) {
  const long ln = static_cast<long>(n);
  return (Rational(1) - q.pow(2 * ln + 1)) / (q.pow(ln) * (Rational(1) - q.value()));
}

Rational haar_partial_sum_closed_form(const QParam& q, std::size_t n) {
  const long ln = static_cast<long>(n);
  const Rational one(1);
  const Rational bracket =
      one - q.pow(ln + 1) * (Rational(2) - q.pow(ln) - q.pow(ln + 1)) / (one - q.pow(2 * ln + 1));
  return bracket * haar_weight_closed_form(q, n) / (one - q.value());
}

// ---------------------------------------------------------------------------

std::vector<Rational> eval_poly_sequence(const CoeffProvider& provider, std::size_t n_max,
                                         const Rational& x) {
  std::vector<Rational> p;
  p.reserve(n_max + 1);
  p.emplace_back(1);
  if (n_max == 0) return p;
  const RecurrenceTriple& t0 = provider(0);
  const Rational p1 = (x - t0.b) / t0.a;
  p.push_back(p1);
  for (std::size_t n = 1; n < n_max; ++n) {
    const RecurrenceTriple& t = provider(n);
    p.push_back(((p1 - t.b) * p[n] - t.c * p[n - 1]) / t.a);
  }
  return p;
}

Rational eval_poly(const CoeffProvider& provider, std::size_t n, const Rational& x) {
  return eval_poly_sequence(provider, n, x).back();
}

Rational eval_poly_phi(const QParam& q, std::size_t n, const Rational& x) {
  const Rational one(1);
  const long ln = static_cast<long>(n);
  const Rational z = q.value() - q.value() * x;
  Rational term(1);
  Rational sum(1);
  for (long k = 0; k < ln; ++k) {
    // term_{k+1} / term_k = (1 - q^{k-n}) (1 - q^{n+1+k}) / (1 - q^{k+1})^2 * z
    const Rational denom = one - q.pow(k + 1);
    term *= (one - q.pow(k - ln)) * (one - q.pow(ln + 1 + k)) / (denom * denom) * z;
    sum += term;
  }
  return sum;
}

Rational spectral_point(const QParam& q, std::size_t m) {
  return Rational(1) - q.pow(static_cast<long>(m));
}

Rational mu_mass(const QParam& q, std::size_t n) {
  return q.pow(static_cast<long>(n)) * (Rational(1) - q.value());
}

Rational mu_moment(const QParam& q, std::size_t j) {
  const Rational one_minus_q = Rational(1) - q.value();
  Rational sum(0);
  for (std::size_t i = 0; i <= j; ++i) {
    Rational term = binomial(j, i) * one_minus_q / (Rational(1) - q.pow(static_cast<long>(i) + 1));
    if (i % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------

struct MuMoments::State {
  detail::LazySequence<Rational> moments;
  explicit State(const QParam& q)
      : moments([q](std::size_t j, const auto&) { return mu_moment(q, j); }) {}
};

MuMoments::MuMoments(QParam q) : q_(q), state_(std::make_shared<const State>(q)) {}

const Rational& MuMoments::operator()(std::size_t j) const { return state_->moments[j]; }

Rational MuMoments::integrate(const Polynomial& f) const {
  Rational sum(0);
  const auto c = f.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!c[j].is_zero()) sum += c[j] * (*this)(j);
  }
  return sum;
}

// ---------------------------------------------------------------------------

struct MonomialTable::State {
  detail::LazySequence<Polynomial> polys;
  explicit State(CoeffProvider p)
      : polys([p = std::move(p)](std::size_t n, const std::deque<Polynomial>& prev) {
          if (n == 0) return Polynomial::constant(Rational(1));
          const RecurrenceTriple& t0 = p(0);
          const Polynomial p1 = Polynomial::linear(t0.a.inverse(), -t0.b / t0.a);
          if (n == 1) return p1;
          const RecurrenceTriple& t = p(n - 1);
          Polynomial next = p1 * prev[n - 1] - prev[n - 1] * t.b - prev[n - 2] * t.c;
          return next * t.a.inverse();
        }) {}
};

MonomialTable::MonomialTable(CoeffProvider provider)
    : provider_(provider), state_(std::make_shared<const State>(std::move(provider))) {}

const Polynomial& MonomialTable::operator()(std::size_t n) const { return state_->polys[n]; }

}  // namespace qhyper
