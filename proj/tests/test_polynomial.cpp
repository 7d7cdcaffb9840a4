#include <gtest/gtest.h>

#include <random>

#include "mdh/polynomial.hpp"

using namespace mdh;

namespace {

Polynomial univariate(Basis b, std::initializer_list<std::pair<int, long>> terms) {
  Polynomial p(1, b);
  for (auto [s, c] : terms) p.add_term({s}, Rational(c));
  return p;
}

}  // namespace

TEST(Stirling, SquareToFactorial) {
  Polynomial m2 = univariate(Basis::monomial, {{2, 1}});
  Polynomial f = stirling_convert(m2, StirlingDirection::monomial_to_factorial);
  EXPECT_EQ(f.basis(), Basis::falling);
  EXPECT_EQ(f.coeffs(), univariate(Basis::falling, {{2, 1}, {1, 1}}).coeffs());
}

TEST(Stirling, FallingCubeToMonomial) {
  Polynomial f3 = univariate(Basis::falling, {{3, 1}});
  Polynomial m = stirling_convert(f3, StirlingDirection::factorial_to_monomial);
  EXPECT_EQ(m.coeffs(), univariate(Basis::monomial, {{3, 1}, {2, -3}, {1, 2}}).coeffs());
}

TEST(Stirling, ConstantIsFixed) {
  Polynomial one = Polynomial::constant(1, 1);
  EXPECT_EQ(stirling_convert(one, StirlingDirection::monomial_to_factorial).coeffs(), one.coeffs());
}

TEST(Stirling, RoundTripUpToDegreeTwelve) {
  for (int d = 0; d <= 12; ++d) {
    Polynomial p = univariate(Basis::monomial, {{d, 1}});
    Polynomial back = stirling_convert(stirling_convert(p, StirlingDirection::monomial_to_factorial),
                                       StirlingDirection::factorial_to_monomial);
    EXPECT_EQ(back.coeffs(), p.coeffs()) << d;
    Polynomial f = univariate(Basis::falling, {{d, 1}});
    Polynomial fb = stirling_convert(stirling_convert(f, StirlingDirection::factorial_to_monomial),
                                     StirlingDirection::monomial_to_factorial);
    EXPECT_EQ(fb.coeffs(), f.coeffs()) << d;
  }
}

TEST(Polynomial, EvaluationAgreesAcrossBases) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> deg(0, 4), coef(-6, 6), pt(-7, 7);
  for (int t = 0; t < 40; ++t) {
    Polynomial p(3, Basis::falling);
    for (int k = 0; k < 5; ++k) p.add_term({deg(rng), deg(rng), deg(rng)}, Rational(coef(rng), 1 + deg(rng)));
    Polynomial m = p.to_monomial();
    for (int k = 0; k < 10; ++k) {
      std::vector<long> x{pt(rng), pt(rng), pt(rng)};
      EXPECT_EQ(p.evaluate(x), m.evaluate(x));
    }
  }
}

TEST(Polynomial, ComposeAndSymmetry) {
  // (m1 + m2)^2 composed with m1 -> a, m2 -> -a vanishes.
  Polynomial s = Polynomial::variable(2, 0) + Polynomial::variable(2, 1);
  Polynomial sq = s * s;
  EXPECT_TRUE(sq.is_symmetric());
  Polynomial a = Polynomial::variable(1, 0);
  EXPECT_TRUE(sq.compose({a, -a}).is_zero());
  EXPECT_TRUE(sq.is_homogeneous(2));
  EXPECT_FALSE((sq + Polynomial::constant(2, 1)).is_homogeneous(2));
  EXPECT_FALSE((sq + Polynomial::variable(2, 0)).is_symmetric());
}

TEST(Polynomial, FallingFactorialValues) {
  EXPECT_EQ(falling_factorial(Rational(5), 3), Rational(60));
  EXPECT_EQ(falling_factorial(Rational(2), 3), Rational(0));
  EXPECT_EQ(falling_factorial(Rational(-1), 2), Rational(2));
  EXPECT_EQ(stirling_first(4, 2), Rational(11));
  EXPECT_EQ(stirling_second(5, 3), Rational(25));
}
