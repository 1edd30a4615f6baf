#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhyper/fourier.hpp"

namespace qhyper {
namespace {

const QParam q23(Rational(2, 3));
const QParam q14(Rational(1, 4));

HSeq random_hseq(const Hypergroup& hg, std::mt19937& rng, std::size_t max_index) {
  std::uniform_int_distribution<long> v(-5, 5);
  std::map<std::size_t, Rational> m;
  for (std::size_t k = 0; k <= max_index; ++k) {
    if (rng() % 2) m[k] = Rational(v(rng), 1 + static_cast<long>(rng() % 3));
  }
  return HSeq(hg, m);
}

TEST(FourierTest, EpsilonTransformsAreCharacters) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t k = 0; k <= 6; ++k) {
    for (std::size_t m = 0; m <= 6; ++m) {
      const SpectrumPoint x = SpectrumPoint::at(m);
      EXPECT_EQ(fourier(HSeq::epsilon(hg, k), x), eval_poly(hg.provider(), k, x.value(hg)));
    }
    EXPECT_EQ(fourier(HSeq::epsilon(hg, k), SpectrumPoint::one()), Rational(1));
  }
  // P_1(x) = (x - b_0) / a_0 with a_0 + b_0 = 1, so 1 - P_1(1 - q^n) = q^n / a_0 = (1 + q) q^n.
  const HSeq d = HSeq::epsilon(hg, 0) - HSeq::epsilon(hg, 1);
  for (long n = 0; n <= 10; ++n) {
    EXPECT_EQ(fourier(d, SpectrumPoint::at(static_cast<std::size_t>(n))), (Rational(1) + q23.value()) * q23.pow(n));
  }
}

TEST(FourierTest, ConvolutionBecomesProduct) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  std::mt19937 rng(99);
  for (int i = 0; i < 8; ++i) {
    const HSeq f = random_hseq(hg, rng, 4), g = random_hseq(hg, rng, 4);
    const HSeq fg = convolve(f, g);
    for (std::size_t m = 0; m <= 8; ++m) {
      const SpectrumPoint x = SpectrumPoint::at(m);
      EXPECT_EQ(fourier(fg, x), fourier(f, x) * fourier(g, x));
    }
    EXPECT_EQ(fourier(fg, SpectrumPoint::one()), fourier(f, SpectrumPoint::one()) * fourier(g, SpectrumPoint::one()));
  }
}

TEST(PlancherelTest, EnclosesSquaredNorm) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  const PlancherelCheck e0 = plancherel_check(HSeq::epsilon(hg, 0), 60);
  EXPECT_EQ(e0.lhs, Rational(1));
  EXPECT_TRUE(e0.ok());
  const PlancherelCheck e1 = plancherel_check(HSeq::epsilon(hg, 1), 60);
  EXPECT_EQ(e1.lhs, Rational(6, 19));
  EXPECT_TRUE(e1.ok());
  EXPECT_LT(e1.rhs.width(), Rational(1, 100000000));

  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    const HSeq f = random_hseq(hg, rng, 5);
    if (f.empty()) continue;
    const PlancherelCheck c = plancherel_check(f, 80);
    EXPECT_TRUE(c.ok()) << i;
    EXPECT_EQ(c.lhs, norm_p(f, 2));
  }
}

TEST(InversePlancherelTest, Examples) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  // P^{-1}(1) = epsilon_0, P^{-1}(P_k) = epsilon_k.
  EXPECT_EQ(inverse_plancherel_poly(hg, Polynomial::constant(Rational(1))), HSeq::epsilon(hg, 0));
  for (std::size_t k = 0; k <= 8; ++k) {
    EXPECT_EQ(inverse_plancherel_poly(hg, hg.monomials()(k)), HSeq::epsilon(hg, k));
  }
  // Round trip through the P basis.
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    std::vector<Rational> c;
    for (int j = 0; j < 7; ++j) c.emplace_back(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
    const Polynomial F = from_p_basis(hg, c);
    const HSeq inv = inverse_plancherel_poly(hg, F);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(inv[k] * hg.h(k), c[k]);
    EXPECT_EQ(inverse_plancherel_poly(hg, F, 9), Rational(0));
    // Transform back: (P^{-1} F)^ = F on the spectrum.
    for (std::size_t m = 0; m <= 5; ++m) {
      const SpectrumPoint x = SpectrumPoint::at(m);
      EXPECT_EQ(fourier(inv, x), F(x.value(hg)));
    }
  }
  EXPECT_EQ(integrate(hg, Polynomial::linear(Rational(1), Rational(0))), Rational(2, 5));
}

TEST(KappaTest, Values) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  EXPECT_TRUE(kappa(hg, 0).values.empty());
  ASSERT_EQ(kappa(hg, 1).values.size(), 1u);
  EXPECT_EQ(kappa(hg, 1).values[0], Rational(5, 3));
}

TEST(KappaTest, ReconstructsDerivative) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t n = 0; n <= 15; ++n) {
    const KappaSeq k = kappa(hg, n);
    std::vector<Rational> c;
    for (std::size_t j = 0; j < k.values.size(); ++j) c.push_back(k.values[j] * hg.h(j));
    EXPECT_EQ(from_p_basis(hg, c), hg.monomials()(n).derivative()) << n;
  }
}

TEST(KappaTest, ConvolutionWithCharacterIsDerivativeTimesCharacter) {
  // kappa_n^(x) = P_n'(x), so kappa_n * alpha_x = P_n'(x) alpha_x.
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t p : {0u, 2u, 5u}) {
    const Rational x = spectral_point(q23, p);
    const TruncatedCharacter a = character(hg, p, 40);
    for (std::size_t n = 1; n <= 6; ++n) {
      const Rational d = hg.monomials()(n).derivative()(x);
      Rational expected(0);
      for (std::size_t m = 0; m <= 10; ++m) expected = max(expected, (d * a.values[m]).abs());
      const Enclosure got = kappa_conv_sup(hg, n, a, 10);
      EXPECT_TRUE(got.contains(expected)) << p << "," << n;
    }
  }
  EXPECT_THROW(kappa_conv_sup(hg, 6, character(hg, 0, 10), 10), std::invalid_argument);
}

TEST(KappaTest, ConvolutionWithFiniteSequences) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  // kappa_n * eps_0 = kappa_n.
  for (std::size_t n = 1; n <= 6; ++n) {
    const KappaSeq k = kappa(hg, n);
    Rational expected(0);
    for (const auto& v : k.values) expected = max(expected, v.abs());
    EXPECT_EQ(kappa_conv_sup(hg, n, HSeq::epsilon(hg, 0), n + 2), Enclosure::point(expected));
  }
  EXPECT_EQ(kappa_conv_sup(hg, 0, HSeq::epsilon(hg, 3), 5), Enclosure::point(Rational(0)));
}

TEST(CesaroTest, Values) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(cesaro_fn(hg, n, 0), Rational(1));
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      EXPECT_EQ(cesaro_fn(hg, n, k), hg.h(n) * hg.linearization().g(n, n, k) / hg.h(k));
    }
    EXPECT_EQ(cesaro_fn(hg, n, 2 * n + 1), Rational(0));
  }
}

TEST(CesaroTest, TendsToOneAndMeansStayInUnitInterval) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  EXPECT_LT((cesaro_fn(hg, 30, 1) - Rational(1)).abs(), Rational(1, 100));
  Rational prev_gap(2);
  for (std::size_t n : {5u, 10u, 20u, 30u}) {
    const Rational gap = Rational(1) - cesaro_fn(hg, n, 1);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  for (std::size_t n = 0; n <= 12; ++n) {
    for (std::size_t k = 0; k <= 4; ++k) {
      const Rational F = cesaro_Fn(hg, n, k);
      EXPECT_GE(F, Rational(0));
      EXPECT_LE(F, Rational(1));
    }
  }
}

TEST(P4Test, ValuesAndCrossCheck) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  const P4Integral p0 = p4_integral(hg, 0);
  EXPECT_EQ(p0.integral, Rational(1));
  EXPECT_EQ(p0.ratio, Rational(1));
  for (std::size_t n = 0; n <= 12; ++n) {
    const P4Integral p = p4_integral(hg, n);
    EXPECT_LE(p.lower_bound, p.ratio) << n;
    EXPECT_EQ(p.integral, p.ratio * hg.h(n));
    EXPECT_EQ(p.integral, hg.h(n) * hg.h(n) * p4_integral_by_linearization(hg, n)) << n;
  }
}

TEST(P4Test, GrowsUnboundedForSmallQ) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q14);
  Rational prev(0);
  bool exceeded = false;
  for (std::size_t n = 1; n <= 10; ++n) {
    const P4Integral p = p4_integral(hg, n);
    EXPECT_GT(p.integral, prev);
    prev = p.integral;
    if (p.integral > Rational(1000)) exceeded = true;
  }
  EXPECT_TRUE(exceeded);
}

double qlimit_oracle(double q) {
  double poch = 1;
  for (int j = 1; j < 400; ++j) poch *= 1 - std::pow(q, j);
  double sum = 0;
  double qk = 1;  // (q;q)_k
  for (int k = 0; k < 60; ++k) {
    if (k > 0) qk *= 1 - std::pow(q, k);
    sum += (k % 2 ? -1.0 : 1.0) * std::pow(q, k * (3.0 * k + 1) / 2) / (qk * qk * qk);
  }
  return poch * sum;
}

TEST(QLimitTest, LeibnizCase) {
  EXPECT_EQ(gamma_k(q14, 1) / gamma_k(q14, 0), Rational(4, 27));
  EXPECT_TRUE(gamma_decreasing(q14));
  const QLimitResult r = qlimit_identity(q14, 30, Rational(1, 100000000000000L));
  EXPECT_EQ(r.rule, TailRule::Leibniz);
  ASSERT_TRUE(r.leibniz_lower_bound.has_value());
  EXPECT_GT(r.rhs.lo(), r.leibniz_lower_bound->lo());
  EXPECT_NEAR(r.rhs.midpoint().to_double(), qlimit_oracle(0.25), 1e-12);
  EXPECT_NEAR(r.rhs.midpoint().to_double(), 0.58665287, 1e-8);
  EXPECT_LT((r.lhs[30] - r.rhs.midpoint()).abs(), Rational(1, 1000000));
  EXPECT_LT(r.rhs.width(), Rational(1, 100000000));
}

TEST(QLimitTest, AbsoluteTailCase) {
  EXPECT_FALSE(gamma_decreasing(q23));
  for (const char* qs : {"2/3", "9/10"}) {
    const QParam q = QParam::parse(qs);
    const QLimitResult r = qlimit_identity(q, 5);
    EXPECT_EQ(r.rule, TailRule::AbsoluteTail);
    EXPECT_FALSE(r.leibniz_lower_bound.has_value());
    EXPECT_LT(r.rhs.width(), Rational(1, 1000000));
    EXPECT_NEAR(r.rhs.midpoint().to_double(), qlimit_oracle(q.value().to_double()), 1e-7) << qs;
  }
  const QLimitResult r = qlimit_identity(q23, 80);
  EXPECT_LT((r.lhs[80] - r.rhs.midpoint()).abs(), Rational(1, 1000));
}

TEST(QLimitTest, DecreasingThresholdIsExact) {
  // q^2 < (1 - q)^3 against a floating oracle away from the root near 0.31767.
  for (long p = 1; p < 40; ++p) {
    const double q = static_cast<double>(p) / 40.0;
    EXPECT_EQ(gamma_decreasing(QParam(Rational(p, 40))), q * q < std::pow(1 - q, 3)) << p;
  }
}

TEST(FiniteIdentityTest, HoldExactly) {
  for (const char* qs : {"1/4", "2/3", "5/7"}) {
    const QParam q = QParam::parse(qs);
    for (std::size_t n = 0; n <= 12; ++n) {
      EXPECT_TRUE(finite_identity_product_sum(q, n)) << qs << " " << n;
      EXPECT_TRUE(finite_identity_gamma_sum(q, n)) << qs << " " << n;
      for (std::size_t k = 0; k <= n; ++k) EXPECT_TRUE(finite_identity_pochhammer(q, n, k));
    }
  }
  EXPECT_THROW(finite_identity_pochhammer(q23, 2, 3), std::invalid_argument);
}

}  // namespace
}  // namespace qhyper
