#include <gtest/gtest.h>

#include <random>

#include "mdh/coeffring.hpp"
#include "mdh/errors.hpp"

using namespace mdh;

namespace {

GaussianRational gr(long a, long b, long c = 0, long d = 1) { return {Rational(a, b), Rational(c, d)}; }

}  // namespace

TEST(GaussianRational, ScalarTimesI) {
  EXPECT_EQ(gr_arith(gr(1, 2), GaussianRational::i(), GrOp::mul), gr(0, 1, 1, 2));
}

TEST(GaussianRational, ISquared) {
  EXPECT_EQ(gr_arith(GaussianRational::i(), GaussianRational::i(), GrOp::mul), GaussianRational(-1));
}

TEST(GaussianRational, Inverse) {
  GaussianRational a = gr(3, 4, 1, 4);
  GaussianRational inv = gr_arith(a, {}, GrOp::inv);
  EXPECT_EQ(inv, gr(6, 5, -2, 5));
  EXPECT_EQ(a * inv, GaussianRational(1));
}

TEST(GaussianRational, InverseOfZeroThrows) { EXPECT_THROW(GaussianRational(0).inv(), DomainError); }

TEST(GaussianRational, IPowers) {
  EXPECT_EQ(GaussianRational::i_pow(0), GaussianRational(1));
  EXPECT_EQ(GaussianRational::i_pow(3), -GaussianRational::i());
  EXPECT_EQ(GaussianRational::i_pow(-1), -GaussianRational::i());
  EXPECT_EQ(GaussianRational::i_pow(-6), GaussianRational(-1));
}

TEST(GaussianRational, RandomInverses) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  for (int t = 0; t < 200; ++t) {
    GaussianRational a = gr(num(rng), den(rng), num(rng), den(rng));
    if (a.is_zero()) continue;
    EXPECT_EQ(gr_arith(a, gr_arith(a, {}, GrOp::inv), GrOp::mul), GaussianRational(1));
  }
}

TEST(CoeffSeries, DifferenceOfSquares) {
  SeriesBounds b{2, 0};
  CoeffSeries a = CoeffSeries::constant(1, b) + CoeffSeries::term(1, 1, 0, b);
  CoeffSeries c = CoeffSeries::constant(1, b) - CoeffSeries::term(1, 1, 0, b);
  CoeffSeries expect = CoeffSeries::constant(1, b) - CoeffSeries::term(1, 2, 0, b);
  EXPECT_EQ(cs_arith(a, c, CsOp::mul), expect);
}

TEST(CoeffSeries, HbarTruncation) {
  SeriesBounds b{0, 1};
  CoeffSeries h = CoeffSeries::term(1, 0, 1, b);
  EXPECT_TRUE(cs_arith(h, h, CsOp::mul).is_zero());
}

TEST(CoeffSeries, TruncatedProduct) {
  SeriesBounds b{2, 0};
  CoeffSeries a = CoeffSeries::constant(1, b) + CoeffSeries::term(1, 1, 0, b) + CoeffSeries::term(1, 2, 0, b);
  CoeffSeries c = CoeffSeries::constant(1, b) + CoeffSeries::term(1, 1, 0, b);
  CoeffSeries expect = CoeffSeries::constant(1, b) + CoeffSeries::term(2, 1, 0, b) + CoeffSeries::term(2, 2, 0, b);
  EXPECT_EQ(cs_arith(a, c, CsOp::mul), expect);
}

TEST(CoeffSeries, CoefficientQueries) {
  SeriesBounds b{2, 1};
  CoeffSeries a = CoeffSeries::constant(1, b) + CoeffSeries::term(3, 2, 1, b);
  EXPECT_EQ(cs_coeff(a, 2, 1), GaussianRational(3));
  EXPECT_EQ(cs_coeff(CoeffSeries::term(1, 1, 0, b), 0, 0), GaussianRational(0));
  EXPECT_THROW(cs_coeff(a, 3, 0), WindowError);
  EXPECT_FALSE(CoeffSeries(b).add_term(3, 0, 1));
}

TEST(CoeffSeries, RingLawsOnRandomTriples) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-5, 5);
  SeriesBounds b{3, 2};
  auto random_series = [&] {
    CoeffSeries s(b);
    for (int e = 0; e <= 3; ++e)
      for (int h = 0; h <= 2; ++h) s.add_term(e, h, gr(num(rng), 1, num(rng), 1));
    return s;
  };
  for (int t = 0; t < 30; ++t) {
    CoeffSeries x = random_series(), y = random_series(), z = random_series();
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    CoeffSeries p = x * y;
    for (int e = 0; e <= 3; ++e)
      for (int h = 0; h <= 2; ++h) {
        GaussianRational conv;
        for (int e1 = 0; e1 <= e; ++e1)
          for (int h1 = 0; h1 <= h; ++h1) conv += x.coeff(e1, h1) * y.coeff(e - e1, h - h1);
        EXPECT_EQ(p.coeff(e, h), conv);
      }
  }
}
