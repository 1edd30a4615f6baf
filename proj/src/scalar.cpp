#include "qhyper/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace qhyper {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty integer");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("Rational: bad integer");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("Rational: bad integer '" + std::string(s) + "'");
    }
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };

  text = trim(text);
  const auto slash = text.find('/');
  mpz_class num = parse_int(trim(text.substr(0, slash)));
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  }
  mpq_class v(num, den);
  v.canonicalize();
  return Rational(std::move(v));
}

Rational Rational::abs() const {
  Rational r = *this;
  mpq_abs(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  const auto e = static_cast<unsigned long>(exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), e);
  // Powers of coprime integers stay coprime; no canonicalization needed.
  Rational r;
  mpq_set_num(r.value_.get_mpq_t(), n.get_mpz_t());
  mpq_set_den(r.value_.get_mpq_t(), d.get_mpz_t());
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) throw std::invalid_argument("to_decimal: negative digit count");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));

  // |v| * 10^digits = quot + rem/den with 0 <= rem < den.
  mpz_class num = ::abs(value_.get_num()) * scale;
  const mpz_class& den = value_.get_den();
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int half = cmp(mpz_class(2 * rem), den);
  if (half > 0 || (half == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;

  std::string body = quot.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && quot != 0) body.insert(0, "-");
  return body;
}

std::size_t Rational::bits() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) + mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

Rational Rational::floor_dyadic(unsigned bits) const {
  mpz_class n = value_.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), value_.get_den_mpz_t());
  mpq_class r(q);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return Rational(std::move(r));
}

Rational Rational::ceil_dyadic(unsigned bits) const {
  mpz_class n = value_.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), value_.get_den_mpz_t());
  mpq_class r(q);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return Rational(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------

QParam::QParam(Rational q) : q_(std::move(q)) {
  if (q_.sign() <= 0 || q_ >= Rational(1)) {
    throw std::invalid_argument("q must satisfy 0 < q < 1, got " + q_.str());
  }
}

QParam QParam::parse(std::string_view text) { return QParam(Rational::parse(text)); }

// ---------------------------------------------------------------------------

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("Enclosure: lo > hi");
}

Rational Enclosure::magnitude() const { return max(lo_.abs(), hi_.abs()); }

Enclosure operator+(const Enclosure& x, const Enclosure& y) {
  return Enclosure(x.lo_ + y.lo_, x.hi_ + y.hi_);
}

Enclosure operator-(const Enclosure& x, const Enclosure& y) {
  return Enclosure(x.lo_ - y.hi_, x.hi_ - y.lo_);
}

Enclosure operator*(const Enclosure& x, const Enclosure& y) {
  const Rational p1 = x.lo_ * y.lo_;
  const Rational p2 = x.lo_ * y.hi_;
  const Rational p3 = x.hi_ * y.lo_;
  const Rational p4 = x.hi_ * y.hi_;
  return Enclosure(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
}

Enclosure operator/(const Enclosure& x, const Enclosure& y) {
  if (y.lo_.sign() <= 0 && y.hi_.sign() >= 0) {
    throw std::domain_error("Enclosure: division by an interval containing zero");
  }
  return x * Enclosure(y.hi_.inverse(), y.lo_.inverse());
}

Enclosure Enclosure::outward(unsigned bits) const {
  return Enclosure(lo_.floor_dyadic(bits), hi_.ceil_dyadic(bits));
}

Enclosure Enclosure::intersect(const Enclosure& e) const {
  if (!intersects(e)) throw std::domain_error("Enclosure: disjoint intersection");
  return Enclosure(max(lo_, e.lo_), min(hi_, e.hi_));
}

Enclosure Enclosure::hull(const Enclosure& e) const {
  return Enclosure(min(lo_, e.lo_), max(hi_, e.hi_));
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
  return os << "[" << e.lo() << ", " << e.hi() << "]";
}

Enclosure enclosure_arith(const Enclosure& x, const Enclosure& y, IntervalOp op) {
  switch (op) {
    case IntervalOp::Add: return x + y;
    case IntervalOp::Sub: return x - y;
    case IntervalOp::Mul: return x * y;
    case IntervalOp::Div: return x / y;
  }
  throw std::invalid_argument("enclosure_arith: unknown op");
}

// ---------------------------------------------------------------------------

Rational q_pochhammer(const Rational& a, const QParam& q, std::size_t n) {
  Rational result(1);
  Rational aqk = a;  // a q^{k-1}
  for (std::size_t k = 0; k < n; ++k) {
    result *= Rational(1) - aqk;
    aqk *= q.value();
  }
  return result;
}

Enclosure q_pochhammer_inf(const Rational& a, const QParam& q, std::size_t terms,
                           unsigned precision_bits) {
  if (a.sign() < 0 || a >= Rational(1)) {
    throw std::invalid_argument("q_pochhammer_inf: requires 0 <= a < 1, got " + a.str());
  }
  if (a.is_zero()) return Enclosure::point(Rational(1));

  // All factors 1 - a q^{k-1} lie in (0, 1], so the running product is a
  // positive interval and rounding each endpoint outward is enough.
  Rational lo(1), hi(1);
  Rational aqk = a;
  for (std::size_t k = 0; k < terms; ++k) {
    const Rational factor = Rational(1) - aqk;
    lo = (lo * factor).floor_dyadic(precision_bits);
    hi = (hi * factor).ceil_dyadic(precision_bits);
    aqk *= q.value();
  }
  // aqk == a q^terms; sum_{k > terms} a q^{k-1} = a q^terms / (1 - q).
  const Rational rest = aqk / (Rational(1) - q.value());
  const Rational tail_lo = max(Rational(0), Rational(1) - rest);
  return Enclosure((lo * tail_lo).floor_dyadic(precision_bits), hi);
}

Enclosure q_pochhammer_inf_tol(const Rational& a, const QParam& q, const Rational& tolerance,
                               unsigned precision_bits) {
  if (tolerance.sign() <= 0) throw std::invalid_argument("q_pochhammer_inf_tol: tolerance must be > 0");
  if (a.sign() < 0 || a >= Rational(1)) {
    throw std::invalid_argument("q_pochhammer_inf: requires 0 <= a < 1, got " + a.str());
  }
  std::size_t terms = 0;
  const Rational one_minus_q = Rational(1) - q.value();
  Rational aqk = a;
  while (aqk / one_minus_q > tolerance) {
    aqk *= q.value();
    ++terms;
  }
  return q_pochhammer_inf(a, q, terms, precision_bits);
}

Rational binomial(std::size_t n, std::size_t k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(mpq_class(b));
}

}  // namespace qhyper
