#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhyper/characters.hpp"
#include "qhyper/contfrac.hpp"

namespace qhyper {
namespace {

const QParam q23(Rational(2, 3));
const Enclosure disk(Rational(2, 3), Rational(2));

TEST(CoefficientTest, Limits) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  EXPECT_GT(cf_coefficient(CFKind::A, hg, 0, 3), Rational(4));
  const Rational inv_q = q23.value().inverse();
  Rational prev = (cf_coefficient(CFKind::B, hg, 0, 10) - inv_q).abs();
  for (std::size_t k = 11; k <= 40; ++k) {
    const Rational d = (cf_coefficient(CFKind::B, hg, 0, k) - inv_q).abs();
    EXPECT_LT(d, prev);
    prev = d;
  }
  for (std::size_t n = 0; n <= 9; ++n) {
    EXPECT_LT((cf_coefficient(CFKind::B, hg, n, 40) - inv_q).abs(), Rational(1, 1000000)) << n;
  }
  EXPECT_THROW(cf_coefficient(CFKind::A, Hypergroup(CoeffProvider::legendre()), 0, 0), std::invalid_argument);
}

TEST(CoefficientTest, FactorizationProperty) {
  std::mt19937 rng(2718);
  for (const char* qs : {"1/5", "1/2", "2/3"}) {
    const Hypergroup hg = Hypergroup::little_q_legendre(QParam::parse(qs));
    for (int i = 0; i < 40; ++i) {
      const std::size_t n = rng() % 12, k = n + k_threshold(hg.q()).value + rng() % 20;
      const Rational C = cf_coefficient(CFKind::C, hg, n, k);
      const Rational D = cf_coefficient(CFKind::D, hg, n, k);
      EXPECT_EQ(cf_coefficient(CFKind::A, hg, n, k), C * D);
      EXPECT_LT(C, D);
    }
  }
}

TEST(CoefficientTest, DefinitionFromRecurrenceData) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  const CoeffProvider& p = hg.provider();
  const Rational P1 = eval_poly(p, 1, spectral_point(q23, 2));
  EXPECT_EQ(cf_coefficient(CFKind::B, hg, 2, 3), (p(6).b - P1) * q23.pow(3) / p(6).c);
  EXPECT_EQ(cf_coefficient(CFKind::C, hg, 2, 5), (p(6).b - P1) / p(6).a);
}

TEST(WorpitzkyTest, Examples) {
  const WorpitzkyResult zero = worpitzky_eval([](std::size_t) { return Rational(0); }, 5);
  EXPECT_EQ(zero.value, Enclosure::point(Rational(1)));
  EXPECT_FALSE(zero.disk_certified);

  const WorpitzkyResult quarter =
      worpitzky_eval([](std::size_t) { return Rational(1, 4); }, 60, TailCertificate{"constant sequence"});
  EXPECT_TRUE(quarter.disk_certified);
  const double target = 2.0 * (std::sqrt(2.0) - 1.0);
  EXPECT_LE(quarter.value.lo().to_double(), target + 1e-15);
  EXPECT_GE(quarter.value.hi().to_double(), target - 1e-15);
  EXPECT_TRUE(disk.contains(quarter.value));

  EXPECT_THROW(worpitzky_eval([](std::size_t j) { return j == 3 ? Rational(1, 3) : Rational(0); }, 10),
               std::domain_error);
  EXPECT_THROW(worpitzky_eval([](std::size_t) { return Rational(0); }, 0), std::invalid_argument);
}

TEST(WorpitzkyTest, RandomAdmissibleSequencesNestAndStayInDisk) {
  std::mt19937 rng(161803);
  std::uniform_int_distribution<long> num(-25, 25);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> s;
    for (int j = 0; j < 40; ++j) s.emplace_back(num(rng), 100);
    auto acc = [&](std::size_t j) { return s[j]; };
    Enclosure prev = disk;
    for (std::size_t depth = 1; depth <= 40; ++depth) {
      const Enclosure e = worpitzky_eval(acc, depth).value;
      EXPECT_TRUE(disk.contains(e));
      EXPECT_TRUE(prev.contains(e)) << "depth " << depth;
      prev = e;
    }
  }
}

TEST(PsiTest, NarrowEnclosure) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  const WorpitzkyResult r = psi(hg, 0, 3, 60);
  EXPECT_TRUE(r.disk_certified);
  EXPECT_TRUE(disk.contains(r.value));
  EXPECT_LT(r.value.width(), Rational(1, 1000000000000000L));
  EXPECT_THROW(psi(hg, 0, 2, 10), std::invalid_argument);
}

TEST(PsiTest, RecursionHolds) {
  // psi_{n,k+1} = A_n(n+k) (1 - 1/psi_{n,k}).
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t k = 3; k <= 8; ++k) {
      const Enclosure cur = psi(hg, n, k, 80).value;
      const Enclosure next = psi(hg, n, k + 1, 80).value;
      const Enclosure A = Enclosure::point(cf_coefficient(CFKind::A, hg, n, n + k));
      const Enclosure rhs = A * (Enclosure::point(Rational(1)) - Enclosure::point(Rational(1)) / cur);
      EXPECT_TRUE(rhs.intersects(next)) << n << "," << k;
    }
  }
}

TEST(PsiTest, IdentityWithCharacters) {
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  const PsiIdentityReport r = psi_identity_check(hg, 9, 8, 80, 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.rows.size(), 90u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.contained) << row.n << "," << row.k;
    EXPECT_LE(row.phi.abs(), Rational(2));
  }
}

TEST(CoefficientBoundTest, Sweeps) {
  EXPECT_TRUE(verify_coefficient_bounds(Hypergroup::little_q_legendre(q23), 9, 13).ok());
  EXPECT_TRUE(verify_coefficient_bounds(Hypergroup::little_q_legendre(QParam(Rational(1, 2))), 6, 10).ok());
  // Boundary: for q = 1/2 the threshold K = 1 has q^{K+1} = 1/4 exactly.
  EXPECT_TRUE(verify_coefficient_bounds(Hypergroup::little_q_legendre(QParam(Rational(1, 2))), 8, 1).ok());
  const Hypergroup hg = Hypergroup::little_q_legendre(q23);
  for (std::size_t n = 0; n <= 9; ++n) {
    for (std::size_t k = 3; k <= 13; ++k) {
      const Rational inv = cf_coefficient(CFKind::A, hg, n, n + k).inverse();
      EXPECT_GT(inv, Rational(0));
      EXPECT_LT(inv, Rational(1, 4));
    }
  }
}

}  // namespace
}  // namespace qhyper
