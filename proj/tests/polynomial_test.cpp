#include <gtest/gtest.h>

#include <random>

#include "qhyper/polynomial.hpp"

namespace qhyper {
namespace {

Polynomial random_poly(std::mt19937& rng, std::size_t degree) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<Rational> c;
  for (std::size_t i = 0; i <= degree; ++i) c.emplace_back(d(rng), 1 + (d(rng) + 9) % 5);
  return Polynomial(std::move(c));
}

TEST(PolynomialTest, TrimsAndReportsDegree) {
  const Polynomial p({Rational(1), Rational(2), Rational(0)});
  EXPECT_EQ(p.degree(), 1u);
  EXPECT_TRUE(Polynomial({Rational(0)}).is_zero());
  EXPECT_EQ(p.coeff(5), Rational(0));
}

TEST(PolynomialTest, EvaluationAndDerivative) {
  const Polynomial p({Rational(1), Rational(-3), Rational(2)});  // 2x^2 - 3x + 1
  EXPECT_EQ(p(Rational(1)), Rational(0));
  EXPECT_EQ(p(Rational(1, 2)), Rational(0));
  EXPECT_EQ(p.derivative(), Polynomial({Rational(-3), Rational(4)}));
  EXPECT_TRUE(Polynomial::constant(Rational(5)).derivative().is_zero());
  EXPECT_EQ(Polynomial::linear(Rational(2), Rational(1))(Rational(3)), Rational(7));
}

TEST(PolynomialTest, RingOperationsAgreeWithEvaluation) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Polynomial a = random_poly(rng, 4), b = random_poly(rng, 3);
    const Rational x(static_cast<long>(rng() % 11) - 5, 3);
    EXPECT_EQ((a + b)(x), a(x) + b(x));
    EXPECT_EQ((a - b)(x), a(x) - b(x));
    EXPECT_EQ((a * b)(x), a(x) * b(x));
    EXPECT_EQ((a * Rational(3, 7))(x), a(x) * Rational(3, 7));
  }
  EXPECT_TRUE((random_poly(rng, 2) * Polynomial()).is_zero());
}

}  // namespace
}  // namespace qhyper
